/**
 * Readers for the canonical simulation outputs.
 *
 * CSV files carry `# key=value` header comments (format version, config
 * and family hashes, model/L/p), then a header row and float rows.
 */
import * as fs from "node:fs";

export interface CsvTable {
  meta: Record<string, string>;
  header: string[];
  rows: number[][];
}

export function parseCanonicalCsv(text: string, source = "<csv>"): CsvTable {
  const meta: Record<string, string> = {};
  let header: string[] | null = null;
  const rows: number[][] = [];
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith("#")) {
      for (const tok of line.slice(1).trim().split(/\s+/)) {
        const eq = tok.indexOf("=");
        if (eq > 0) meta[tok.slice(0, eq)] = tok.slice(eq + 1);
      }
      continue;
    }
    if (!header) {
      header = line.split(",");
      continue;
    }
    rows.push(line.split(",").map(Number));
  }
  if (!header) throw new Error(`${source}: no header row`);
  return { meta, header, rows };
}

export function readCsv(path: string): CsvTable {
  return parseCanonicalCsv(fs.readFileSync(path, "utf8"), path);
}

export function column(table: CsvTable, name: string): number[] {
  const i = table.header.indexOf(name);
  if (i < 0) throw new Error(`missing column ${name}`);
  return table.rows.map((r) => r[i]);
}

/** Profile matrix of a trajectory file: rows are times, columns S_1.. */
export function profileMatrix(table: CsvTable): { t: number[]; s: number[][] } {
  const t = table.rows.map((r) => r[0]);
  const s = table.rows.map((r) => r.slice(1));
  return { t, s };
}

export interface SidecarJson {
  format_version: number;
  config_hash: string;
  family_hash: string;
  config: Record<string, unknown>;
  mean_profile?: number[];
  [key: string]: unknown;
}

export function readSidecar(path: string): SidecarJson {
  return JSON.parse(fs.readFileSync(path, "utf8")) as SidecarJson;
}

/** Throw if the inputs mix different sweep families. */
export function assertSameFamily(metas: { family?: string; source: string }[]): void {
  const families = new Set(metas.map((m) => m.family ?? "?"));
  if (families.size > 1) {
    throw new Error(
      `mixed config families: ${[...families].sort().join(", ")} ` +
        `(from ${metas.length} inputs)`
    );
  }
}
