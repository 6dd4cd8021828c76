// Pure game-state logic for the sudoku UI. All mutations flow through these
// functions; the DOM layer renders whatever state they return.

export interface GameState {
  puzzle: string; // 81 chars, '.' for blanks: the locked givens
  progress: string; // 81 chars: current play state, always extends puzzle
  selected: number | null; // cell index 0..80
  seed: number;
}

export const GRID_CELLS = 81;

export function isGridString(s: string): boolean {
  return /^[.0-9]{81}$/.test(s);
}

function normalize(s: string): string {
  return s.replace(/0/g, ".");
}

export function newGame(puzzle: string, seed: number): GameState {
  if (!isGridString(puzzle)) {
    throw new Error(`not an 81-cell grid string: ${puzzle}`);
  }
  const p = normalize(puzzle);
  return { puzzle: p, progress: p, selected: null, seed };
}

export function isGiven(state: GameState, cell: number): boolean {
  return state.puzzle[cell] !== ".";
}

export function selectCell(state: GameState, cell: number | null): GameState {
  if (cell !== null && (cell < 0 || cell >= GRID_CELLS)) {
    return state;
  }
  return { ...state, selected: cell };
}

// Enter 1..9, or null to erase. Givens are immutable: entering on a given
// cell returns the state unchanged, preserving progress-extends-puzzle.
export function enterDigit(
  state: GameState,
  cell: number,
  digit: number | null,
): GameState {
  if (cell < 0 || cell >= GRID_CELLS || isGiven(state, cell)) {
    return state;
  }
  if (digit !== null && (digit < 1 || digit > 9)) {
    return state;
  }
  const chars = state.progress.split("");
  chars[cell] = digit === null ? "." : String(digit);
  return { ...state, progress: chars.join("") };
}

export function applyHint(
  state: GameState,
  cell: number,
  digit: number,
): GameState {
  return enterDigit(state, cell, digit);
}

export function isComplete(progress: string): boolean {
  return !progress.includes(".");
}

function rowOf(cell: number): number {
  return Math.floor(cell / 9);
}

function colOf(cell: number): number {
  return cell % 9;
}

function blockOf(cell: number): number {
  return Math.floor(rowOf(cell) / 3) * 3 + Math.floor(colOf(cell) / 3);
}

// Cells participating in a row/column/block duplicate; mirrors the server's
// /api/sudoku/check conflict semantics.
export function conflictCells(progress: string): Set<number> {
  const bad = new Set<number>();
  const groups: Map<string, number[]> = new Map();
  for (let cell = 0; cell < GRID_CELLS; cell++) {
    const ch = progress[cell];
    if (ch === ".") continue;
    for (const key of [
      `r${rowOf(cell)}:${ch}`,
      `c${colOf(cell)}:${ch}`,
      `b${blockOf(cell)}:${ch}`,
    ]) {
      const members = groups.get(key);
      if (members) {
        members.push(cell);
      } else {
        groups.set(key, [cell]);
      }
    }
  }
  for (const members of groups.values()) {
    if (members.length > 1) {
      for (const cell of members) bad.add(cell);
    }
  }
  return bad;
}

// (row, col) are 1-based on the wire; cells are 0-based here.
export function cellFromWire(cell: [number, number]): number {
  return (cell[0] - 1) * 9 + (cell[1] - 1);
}

export function givenCount(state: GameState): number {
  return state.puzzle.split("").filter((c) => c !== ".").length;
}
