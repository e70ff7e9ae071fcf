import { readFileSync } from "fs";

export const EXPECTED_HEADER =
  "seed,method,set_size,tau,ue,avg_rate,sr_static,sr_dynamic,sr_combined,max_usage,feasible";

export class SchemaError extends Error {}
export class EmptySelection extends Error {}

export interface ResultRow {
  seed: number;
  method: string;
  set_size: number;
  tau: number;
  ue: number;
  avg_rate: number;
  sr_static: number;
  sr_dynamic: number;
  sr_combined: number;
  max_usage: number;
  feasible: boolean;
}

function num(field: string, line: number): number {
  const v = Number(field);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`line ${line}: expected a finite number, got "${field}"`);
  }
  return v;
}

export function parseCsv(text: string): ResultRow[] {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0 || lines[0] !== EXPECTED_HEADER) {
    throw new SchemaError(
      `header mismatch: expected "${EXPECTED_HEADER}", got "${lines[0] ?? ""}"`,
    );
  }
  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const f = lines[i].split(",");
    if (f.length !== 11) {
      throw new SchemaError(`line ${i + 1}: expected 11 fields, got ${f.length}`);
    }
    rows.push({
      seed: num(f[0], i + 1),
      method: f[1],
      set_size: num(f[2], i + 1),
      tau: num(f[3], i + 1),
      ue: num(f[4], i + 1),
      avg_rate: num(f[5], i + 1),
      sr_static: num(f[6], i + 1),
      sr_dynamic: num(f[7], i + 1),
      sr_combined: num(f[8], i + 1),
      max_usage: num(f[9], i + 1),
      feasible: f[10] === "true",
    });
  }
  return rows;
}

export function loadCsv(path: string): ResultRow[] {
  return parseCsv(readFileSync(path, "utf-8"));
}
