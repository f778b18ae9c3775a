/** Scripted session against the real service: the panel equals the CLI output.
 *
 * Spawns the Python session server, drives the same client/view code the
 * browser uses (create the worked example, click 3, 1, 2, read the vertex-3
 * panel), and compares every displayed value byte-for-byte with the CLI's
 * fg output; then replays the exported session through the CLI.
 */

import assert from "node:assert/strict";
import { execFileSync, spawn } from "node:child_process";
import test from "node:test";

import { SessionClient } from "../src/client.js";
import type { MatrixJson, SessionState } from "../src/types.js";
import { exportSession, formatPolynomial, panelModel, variableNames } from "../src/view.js";

const C3: MatrixJson = {
  labels: [1, 2, 3],
  rows: [
    [0, -1, 0],
    [1, 0, -1],
    [0, 2, 0],
  ],
};

const PORT = 8977;

function cliFg(matrix: MatrixJson, seq: Array<number | string>, vertex: string): { F: unknown; g: number[] } {
  const rows = matrix.rows.map((r) => r.join(",")).join(";");
  const out = execFileSync("python3", [
    "-m",
    "clusterspecies.cli",
    "fg",
    "--matrix",
    rows,
    "--seq",
    seq.join(",") || "-",
    "--vertex",
    vertex,
  ], { cwd: "..", encoding: "utf8" });
  return JSON.parse(out);
}

async function startServer(): Promise<() => void> {
  const proc = spawn("python3", ["-m", "clusterspecies.cli", "serve", "--port", String(PORT)], {
    cwd: "..",
    stdio: ["ignore", "pipe", "inherit"],
  });
  await new Promise<void>((resolve, reject) => {
    proc.stdout.once("data", () => resolve());
    proc.once("error", reject);
    proc.once("exit", (code) => reject(new Error(`server exited early: ${code}`)));
  });
  return () => proc.kill();
}

test("scripted session displays exactly the CLI values and replays byte-identically", async () => {
  const stop = await startServer();
  try {
    const client = new SessionClient(`http://127.0.0.1:${PORT}`);
    let state: SessionState = await client.createFromMatrix(C3);
    const initialB = state.B;
    for (const k of [3, 1, 2]) {
      state = await client.mutate(state.id, k);
    }

    // the vertex-3 panel shows the worked example's values
    const rows = panelModel(state);
    const row3 = rows.find((r) => r.vertex === "3")!;
    assert.equal(row3.fText, "1 + z3 + z2·z3 + z1·z2·z3");
    assert.equal(row3.gText, "(0, 0, -1)");

    // every panel value equals the CLI fg output for the reversed history
    const seq = [...state.history].reverse();
    const vars = variableNames(state);
    for (const row of rows) {
      const cli = cliFg(C3, seq, row.vertex);
      assert.deepEqual(row.raw.F, cli.F, `F mismatch at vertex ${row.vertex}`);
      assert.deepEqual(row.raw.g, cli.g, `g mismatch at vertex ${row.vertex}`);
      assert.equal(row.fText, formatPolynomial(cli.F as never, vars));
    }

    // export, then replay through the CLI: byte-identical JSON per vertex
    const exported = exportSession(initialB, state);
    for (const [vertex, panel] of Object.entries(exported.panels)) {
      const cli = cliFg(exported.matrix, [...exported.history].reverse(), vertex);
      assert.equal(JSON.stringify(panel.F), JSON.stringify(cli.F));
      assert.equal(JSON.stringify(panel.g), JSON.stringify(cli.g));
    }

    // undo walks back to the initial state
    let undone = state;
    for (let i = 0; i < 3; i++) {
      undone = await client.undo(state.id);
    }
    assert.deepEqual(undone.history, []);
    assert.deepEqual(undone.fg["3"].g, [0, 0, 1]);
  } finally {
    stop();
  }
});
