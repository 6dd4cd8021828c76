// DOM layer: renders the grid from GameState and wires user input to the
// service. At most one API call is in flight per user action; the buttons
// stay disabled while one is pending.

import { Client, makeClient } from "./api.js";
import {
  GameState,
  applyHint,
  cellFromWire,
  conflictCells,
  enterDigit,
  isComplete,
  isGiven,
  newGame,
  selectCell,
} from "./state.js";

export interface App {
  state: () => GameState | null;
  newGame: (seed?: number) => Promise<void>;
  hint: () => Promise<void>;
  check: () => Promise<void>;
  clickCell: (cell: number) => void;
  pressKey: (key: string) => void;
}

export function mountApp(root: HTMLElement, client: Client): App {
  let state: GameState | null = null;
  let pending = false;
  let hintCell: number | null = null;

  root.innerHTML = `
    <div class="toolbar">
      <button id="new-game">New game</button>
      <button id="hint">Hint</button>
      <button id="check">Check</button>
      <span id="seed" class="seed"></span>
    </div>
    <div id="banner" class="banner" hidden></div>
    <table id="grid" class="grid"><tbody>
      ${Array.from({ length: 9 }, (_, r) =>
        `<tr>${Array.from({ length: 9 }, (_, c) =>
          `<td id="cell-${r * 9 + c}" data-cell="${r * 9 + c}"></td>`).join("")}</tr>`,
      ).join("")}
    </tbody></table>
    <div id="toast" class="toast" hidden></div>
  `;

  const grid = root.querySelector<HTMLTableElement>("#grid")!;
  const banner = root.querySelector<HTMLElement>("#banner")!;
  const toast = root.querySelector<HTMLElement>("#toast")!;
  const seedLabel = root.querySelector<HTMLElement>("#seed")!;
  const buttons = {
    newGame: root.querySelector<HTMLButtonElement>("#new-game")!,
    hint: root.querySelector<HTMLButtonElement>("#hint")!,
    check: root.querySelector<HTMLButtonElement>("#check")!,
  };

  function showToast(message: string): void {
    toast.textContent = message;
    toast.hidden = false;
    setTimeout(() => {
      toast.hidden = true;
    }, 4000);
  }

  function setPending(value: boolean): void {
    pending = value;
    for (const b of Object.values(buttons)) {
      b.disabled = value;
    }
  }

  function render(): void {
    if (!state) return;
    const conflicts = conflictCells(state.progress);
    for (let cell = 0; cell < 81; cell++) {
      const td = root.querySelector<HTMLTableCellElement>(`#cell-${cell}`)!;
      const ch = state.progress[cell];
      td.textContent = ch === "." ? "" : ch;
      td.className = [
        isGiven(state, cell) ? "given" : "entry",
        state.selected === cell ? "selected" : "",
        conflicts.has(cell) ? "conflict" : "",
        hintCell === cell ? "hinted" : "",
      ]
        .filter(Boolean)
        .join(" ");
    }
    seedLabel.textContent = `seed ${state.seed}`;
  }

  function showBanner(text: string): void {
    banner.textContent = text;
    banner.hidden = false;
  }

  async function doNewGame(seed?: number): Promise<void> {
    if (pending) return;
    setPending(true);
    try {
      const p = await client.newPuzzle(seed);
      if (p) {
        state = newGame(p.puzzle, p.seed);
        hintCell = null;
        banner.hidden = true;
        render();
      }
    } catch (err) {
      showToast(`new game failed: ${err}`);
    } finally {
      setPending(false);
    }
  }

  async function doHint(): Promise<void> {
    if (pending || !state) return;
    setPending(true);
    try {
      const h = await client.hint(state.puzzle, state.progress);
      if (h === null) {
        showToast("nothing to hint: already solved");
      } else {
        const cell = cellFromWire(h.cell);
        state = applyHint(state, cell, h.digit);
        hintCell = cell;
        showToast(h.correction ? "hint corrected a wrong digit" : "hint filled a cell");
        render();
        await maybeCelebrate();
      }
    } catch (err) {
      showToast(`hint failed: ${err}`);
    } finally {
      setPending(false);
    }
  }

  async function doCheck(): Promise<void> {
    if (pending || !state) return;
    setPending(true);
    try {
      const res = await client.check(state.puzzle, state.progress);
      if (res) {
        if (res.status === "solved") {
          showBanner("Solved! \u{1F389}");
        } else if (res.status === "conflict") {
          showToast(`conflicts at ${res.conflicts.length} cells`);
        } else {
          showToast("no conflicts so far");
        }
      }
    } catch (err) {
      showToast(`check failed: ${err}`);
    } finally {
      setPending(false);
    }
  }

  async function maybeCelebrate(): Promise<void> {
    if (!state || !isComplete(state.progress)) return;
    try {
      const res = await client.check(state.puzzle, state.progress);
      if (res && res.status === "solved") {
        showBanner("Solved! \u{1F389}");
      }
    } catch {
      // banner is cosmetic; stay quiet on errors here
    }
  }

  function clickCell(cell: number): void {
    if (!state) return;
    state = selectCell(state, cell);
    render();
  }

  function pressKey(key: string): void {
    if (!state || state.selected === null) return;
    let next = state;
    if (key >= "1" && key <= "9") {
      next = enterDigit(state, state.selected, Number(key));
    } else if (key === "Backspace" || key === "Delete" || key === "0") {
      next = enterDigit(state, state.selected, null);
    } else {
      return;
    }
    if (next !== state) {
      state = next;
      hintCell = null;
      render();
      void maybeCelebrate();
    }
  }

  grid.addEventListener("click", (ev) => {
    const td = (ev.target as HTMLElement).closest("td");
    if (td && td.dataset.cell !== undefined) {
      clickCell(Number(td.dataset.cell));
    }
  });
  document.addEventListener("keydown", (ev) => {
    pressKey(ev.key);
  });
  buttons.newGame.addEventListener("click", () => void doNewGame());
  buttons.hint.addEventListener("click", () => void doHint());
  buttons.check.addEventListener("click", () => void doCheck());

  return {
    state: () => state,
    newGame: doNewGame,
    hint: doHint,
    check: doCheck,
    clickCell,
    pressKey,
  };
}

declare global {
  interface Window {
    __SATKIT_TEST__?: boolean;
  }
}

if (typeof document !== "undefined" && !window.__SATKIT_TEST__) {
  document.addEventListener("DOMContentLoaded", () => {
    const root = document.getElementById("app");
    if (root) {
      mountApp(root, makeClient(""));
    }
  });
}
