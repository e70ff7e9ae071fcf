import { ResultRow } from "./csv.js";

/** Mean line plus min-max band across seeds, one point per tau. */
export interface Series {
  taus: number[];
  mean: number[];
  lo: number[];
  hi: number[];
}

export type Field = "avg_rate" | "sr_static" | "sr_dynamic" | "sr_combined" | "max_usage";

/**
 * Aggregate one (method, set_size) slice: rows are first reduced per
 * (seed, tau) by averaging over UEs (the secrecy and usage columns repeat
 * across UE rows, so this is a no-op for them), then the per-seed values
 * give the mean and the min-max envelope.
 */
export function aggregate(rows: ResultRow[], method: string, setSize: number,
                          field: Field): Series {
  const perSeedTau = new Map<string, { sum: number; n: number; seed: number; tau: number }>();
  for (const r of rows) {
    if (r.method !== method || r.set_size !== setSize) continue;
    const key = `${r.seed}:${r.tau}`;
    const acc = perSeedTau.get(key) ?? { sum: 0, n: 0, seed: r.seed, tau: r.tau };
    acc.sum += r[field];
    acc.n += 1;
    perSeedTau.set(key, acc);
  }
  const byTau = new Map<number, number[]>();
  for (const { sum, n, tau } of perSeedTau.values()) {
    const values = byTau.get(tau) ?? [];
    values.push(sum / n);
    byTau.set(tau, values);
  }
  const taus = [...byTau.keys()].sort((a, b) => a - b);
  return {
    taus,
    mean: taus.map((t) => byTau.get(t)!.reduce((a, b) => a + b, 0) / byTau.get(t)!.length),
    lo: taus.map((t) => Math.min(...byTau.get(t)!)),
    hi: taus.map((t) => Math.max(...byTau.get(t)!)),
  };
}

export function methodsIn(rows: ResultRow[]): string[] {
  return [...new Set(rows.map((r) => r.method))].sort();
}

export function sizesIn(rows: ResultRow[]): number[] {
  return [...new Set(rows.map((r) => r.set_size))].sort((a, b) => a - b);
}
