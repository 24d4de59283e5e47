/** Small glob: `*` matches within one path segment (enough for the
 * canonical layout, e.g. out/classical_L*_p0.5 or runs/disentangle_*.csv). */
import * as fs from "node:fs";
import * as path from "node:path";

export function expandGlob(pattern: string): string[] {
  const abs = path.resolve(pattern);
  const segs = abs.split(path.sep).filter((s, i) => i === 0 || s !== "");
  const roots: string[] = [path.sep];
  let current = roots;
  for (const seg of segs.slice(1)) {
    const next: string[] = [];
    for (const base of current) {
      if (!seg.includes("*")) {
        const p = path.join(base, seg);
        if (fs.existsSync(p)) next.push(p);
        continue;
      }
      if (!fs.existsSync(base) || !fs.statSync(base).isDirectory()) continue;
      const re = new RegExp(
        "^" + seg.split("*").map(escapeRe).join(".*") + "$"
      );
      for (const entry of fs.readdirSync(base).sort()) {
        if (re.test(entry)) next.push(path.join(base, entry));
      }
    }
    current = next;
  }
  return current.sort();
}

function escapeRe(s: string): string {
  return s.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}
