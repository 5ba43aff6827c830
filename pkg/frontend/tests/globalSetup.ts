// Spawns a synthetic workspace and the Python API for the scenario tests.

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export const API_PORT = 8799;
export const API_BASE = `http://127.0.0.1:${API_PORT}`;

let server: ChildProcess | null = null;
let workspaceDir: string | null = null;

async function waitForHealth(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${API_BASE}/api/health`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error(`API did not come up on ${API_BASE}`);
}

export async function setup(): Promise<void> {
  workspaceDir = mkdtempSync(join(tmpdir(), 'ganseval-ui-'));
  const synth = spawnSync(
    'python3',
    [
      '-m', 'ganseval.cli', 'synth', workspaceDir,
      '--regime', 'converging', '--seed', '42',
      '--n-real', '20', '--m-gen', '16', '--t-len', '24', '--iters', '5',
    ],
    { stdio: 'inherit' },
  );
  if (synth.status !== 0) throw new Error('ganseval synth failed');
  server = spawn(
    'python3',
    ['-m', 'ganseval.cli', 'serve', '--workspace', workspaceDir, '--port', String(API_PORT)],
    { stdio: 'inherit' },
  );
  await waitForHealth();
}

export async function teardown(): Promise<void> {
  server?.kill('SIGTERM');
  if (workspaceDir) rmSync(workspaceDir, { recursive: true, force: true });
}
