/**
 * plot <figure-kind> --in GLOB [--in GLOB ...] --out PATH [--pc X] [--nu X]
 *
 * Renders one of the eight figure kinds from canonical simulation
 * outputs.  Inputs are cell directories (or the disentangle-bench CSV
 * for disentangle-depth).  Exit codes: 0 ok, 2 usage/config, 1 render
 * failure (missing inputs, mixed families).
 */
import { FIGURE_KINDS, FigureKind, FigureSpec, render } from "./figures.js";
import { expandGlob } from "./glob.js";

export function parseArgs(argv: string[]): FigureSpec {
  const [kind, ...rest] = argv;
  if (!kind || !(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new UsageError(`figure kind must be one of: ${FIGURE_KINDS.join(", ")}`);
  }
  const inputs: string[] = [];
  let output = "";
  let pc: number | undefined;
  let nu: number | undefined;
  for (let i = 0; i < rest.length; i++) {
    const a = rest[i];
    const next = () => {
      if (i + 1 >= rest.length) throw new UsageError(`missing value for ${a}`);
      return rest[++i];
    };
    if (a === "--in") inputs.push(...expandGlob(next()));
    else if (a === "--out") output = next();
    else if (a === "--pc") pc = Number(next());
    else if (a === "--nu") nu = Number(next());
    else throw new UsageError(`unknown flag ${a}`);
  }
  if (!output) throw new UsageError("--out is required");
  return { kind: kind as FigureKind, inputs, output, pc, nu };
}

export class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    render(spec);
    console.log(`wrote ${spec.output} (${spec.kind}, ${spec.inputs.length} inputs)`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return err instanceof UsageError ? 2 : 1;
  }
}

import { fileURLToPath } from "node:url";

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
