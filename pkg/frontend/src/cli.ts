import { parseArgs } from "util";

import { EmptySelection, SchemaError } from "./csv.js";
import { Family, render } from "./figures.js";

const USAGE = `usage: node dist/cli.js --csv <sweep.csv> --family <combined|secrecy_strategies|usage> [--size <n>] --out <figure.svg>`;

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        family: { type: "string" },
        size: { type: "string" },
        out: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(`error: ${(err as Error).message}\n${USAGE}`);
    return 1;
  }
  const families: Family[] = ["combined", "secrecy_strategies", "usage"];
  if (!args.csv || !args.out || !families.includes(args.family as Family)) {
    console.error(USAGE);
    return 1;
  }
  const setSize = args.size === undefined ? undefined : Number(args.size);
  if (setSize !== undefined && (!Number.isInteger(setSize) || setSize < 1)) {
    console.error(`error: --size must be a positive integer, got "${args.size}"`);
    return 1;
  }
  try {
    render({
      inputCsv: args.csv,
      family: args.family as Family,
      setSize,
      outputPath: args.out,
    });
  } catch (err) {
    if (err instanceof SchemaError || err instanceof EmptySelection) {
      console.error(`error: ${err.constructor.name}: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${args.out}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
