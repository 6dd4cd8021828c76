// Typed wrappers for the sudoku service JSON API.

export interface NewPuzzle {
  puzzle: string;
  seed: number;
  bounds: [number, number];
}

export interface CheckResult {
  status: "solved" | "consistent" | "conflict";
  conflicts: [number, number][];
}

export interface HintResult {
  cell: [number, number];
  digit: number;
  correction: boolean;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function post<T>(base: string, path: string, body: unknown): Promise<T | null> {
  const resp = await fetch(base + path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (resp.status === 204) {
    return null;
  }
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const data = await resp.json();
      if (data.detail) detail = String(data.detail);
    } catch {
      // keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export function makeClient(base = "") {
  return {
    newPuzzle: (seed?: number) =>
      post<NewPuzzle>(base, "/api/sudoku/new", seed === undefined ? {} : { seed }),
    check: (puzzle: string, progress: string) =>
      post<CheckResult>(base, "/api/sudoku/check", { puzzle, progress }),
    hint: (puzzle: string, progress: string) =>
      post<HintResult>(base, "/api/sudoku/hint", { puzzle, progress }),
    solve: (puzzle: string) =>
      post<{ solution: string }>(base, "/api/sudoku/solve", { puzzle }),
  };
}

export type Client = ReturnType<typeof makeClient>;
