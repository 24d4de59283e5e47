import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { FIGURE_KINDS, FigureSpec, render } from "../src/figures.js";
import { expandGlob } from "../src/glob.js";
import { main, parseArgs } from "../src/cli.js";

let root: string;

/** Write a synthetic canonical cell with deterministic numbers. */
function writeCell(dir: string, model: string, L: number, p: number, family = "fam1"): void {
  fs.mkdirSync(dir, { recursive: true });
  const head = [
    "# format_version=1",
    `# config_hash=h_${model}_${L}_${p}`,
    `# family_hash=${family}`,
    `# model=${model} L=${L} p=${p}`,
  ];
  const times = [10, 20, 30, 40];
  const agg = [...head, "t,mean_S_half,var_S_half,n_traj"];
  for (const t of times) {
    const s = 0.5 * Math.sqrt(L) * Math.min(1, t / 30) + 0.01 * p;
    agg.push(`${t},${s},0.04,3`);
  }
  fs.writeFileSync(path.join(dir, "aggregate.csv"), agg.join("\n") + "\n");
  const width = L - 1;
  const meanProfile: number[] = [];
  for (let x = 1; x <= width; x++) meanProfile.push(Math.sqrt((x * (L - x)) / L));
  fs.writeFileSync(
    path.join(dir, "meta.json"),
    JSON.stringify({
      format_version: 1,
      config_hash: `h_${model}_${L}_${p}`,
      family_hash: family,
      config: { model, L, p },
      mean_profile: meanProfile,
    })
  );
  for (let k = 0; k < 3; k++) {
    const lines = [...head, "t," + meanProfile.map((_, i) => `S_${i + 1}`).join(",")];
    for (const t of times) {
      const row = meanProfile.map((v, i) => (v * Math.min(1, t / 30) + 0.1 * k + 0.05 * i % 0.3).toFixed(6));
      lines.push(`${t},${row.join(",")}`);
    }
    fs.writeFileSync(path.join(dir, `traj_0000${k}.csv`), lines.join("\n") + "\n");
  }
}

function writeBench(file: string): void {
  const lines = ["# format_version=1", "# model=clifford kind=disentangle-bench", "L,n_e,rep,n_d,censored"];
  for (const L of [8, 16]) {
    for (const ne of [1, 2, L, 2 * L * L]) {
      for (let rep = 0; rep < 3; rep++) {
        const nd = ne <= L / 2 ? Math.round((L - 1) * (ne === 1 ? 1 : 1.5)) + rep : Math.round(0.8 * L * L) + rep;
        lines.push(`${L},${ne},${rep},${nd},0`);
      }
    }
  }
  fs.writeFileSync(file, lines.join("\n") + "\n");
}

beforeAll(() => {
  root = fs.mkdtempSync(path.join(os.tmpdir(), "plots-"));
  for (const L of [8, 16, 32]) {
    for (const p of [0.3, 0.5]) {
      writeCell(path.join(root, `classical_L${L}_p${p}`), "classical", L, p);
    }
  }
  writeCell(path.join(root, "other_L8_p0.5"), "classical", 8, 0.5, "fam2");
  writeBench(path.join(root, "disentangle_clifford.csv"));
});

afterAll(() => {
  fs.rmSync(root, { recursive: true, force: true });
});

function specFor(kind: (typeof FIGURE_KINDS)[number], out: string): FigureSpec {
  const cells = expandGlob(path.join(root, "classical_L*"));
  if (kind === "disentangle-depth") {
    return { kind, inputs: [path.join(root, "disentangle_clifford.csv")], output: out };
  }
  if (kind === "fss-collapse") {
    return { kind, inputs: cells, output: out, pc: 0.5, nu: 1.0 };
  }
  return { kind, inputs: cells, output: out };
}

describe("figure rendering", () => {
  it.each([...FIGURE_KINDS])("renders %s", (kind) => {
    const out = path.join(root, `${kind}.svg`);
    const svg = render(specFor(kind, out));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("</svg>");
    expect(fs.existsSync(out)).toBe(true);
    expect(fs.statSync(out).size).toBeGreaterThan(500);
  });

  it("is deterministic byte for byte", () => {
    const a = render(specFor("growth-curve", path.join(root, "det_a.svg")));
    const b = render(specFor("growth-curve", path.join(root, "det_b.svg")));
    expect(a).toBe(b);
    expect(fs.readFileSync(path.join(root, "det_a.svg"), "utf8")).toBe(
      fs.readFileSync(path.join(root, "det_b.svg"), "utf8")
    );
  });

  it("contains the analytic profile overlay", () => {
    const svg = render(specFor("critical-profile", path.join(root, "prof.svg")));
    expect(svg).toContain("closed form");
    expect(svg).toContain("stroke-dasharray");
  });

  it("draws slope guides on growth curves", () => {
    const svg = render(specFor("growth-curve", path.join(root, "growth.svg")));
    expect(svg).toContain("slope 0.25");
    expect(svg).toContain("slope 0.33");
  });

  it("overlays the harmonic-number law on depth plots", () => {
    const svg = render(specFor("disentangle-depth", path.join(root, "depth.svg")));
    expect(svg).toContain("rescaled collapse");
  });

  it("fails on empty input sets", () => {
    expect(() =>
      render({ kind: "growth-curve", inputs: [], output: path.join(root, "x.svg") })
    ).toThrow(/no inputs/);
    expect(fs.existsSync(path.join(root, "x.svg"))).toBe(false);
  });

  it("fails on mixed config families", () => {
    const inputs = expandGlob(path.join(root, "*_L8_p0.5"));
    expect(inputs.length).toBe(2);
    expect(() =>
      render({ kind: "growth-curve", inputs, output: path.join(root, "y.svg") })
    ).toThrow(/mixed config families/);
  });
});

describe("cli", () => {
  it("parses arguments and renders", () => {
    const out = path.join(root, "cli.svg");
    const code = main(["growth-curve", "--in", path.join(root, "classical_L8_*"), "--out", out]);
    expect(code).toBe(0);
    expect(fs.existsSync(out)).toBe(true);
  });

  it("rejects unknown kinds and missing flags", () => {
    expect(main(["nope", "--out", "x.svg"])).toBe(2);
    expect(main(["growth-curve", "--in", path.join(root, "classical_L8_*")])).toBe(2);
  });

  it("returns 1 when inputs do not resolve", () => {
    expect(
      main(["growth-curve", "--in", path.join(root, "missing_*"), "--out", path.join(root, "z.svg")])
    ).toBe(1);
  });

  it("exposes pc/nu flags for the collapse", () => {
    const spec = parseArgs([
      "fss-collapse", "--in", path.join(root, "classical_L*"),
      "--out", path.join(root, "c.svg"), "--pc", "0.5", "--nu", "1.0",
    ]);
    expect(spec.pc).toBe(0.5);
    expect(spec.nu).toBe(1.0);
  });
});
