/* tslint:disable */
/* eslint-disable */

/**
 * An adaptive rule on the unit square, flattened for drawing.
 */
export class SquareRule {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Leaf squares as `x, y, side` triples.
     */
    readonly cells: Float64Array;
    readonly count: number;
    readonly depths: Uint32Array;
    readonly integrals: Float64Array;
    readonly labels: string[];
    /**
     * `x0, y0, x1, y1, ...`
     */
    readonly points: Float64Array;
    readonly weights: Float64Array;
}

export function convergence(spec: string, dim: number, m_max: number): Float64Array;

export function heavisideSamples(eps: number, samples: number): Float64Array;

export function squareRule(spec: string, tol: number, strict: boolean): SquareRule;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_squarerule_free: (a: number, b: number) => void;
    readonly convergence: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly heavisideSamples: (a: number, b: number) => [number, number, number, number];
    readonly squareRule: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly squarerule_cells: (a: number) => [number, number];
    readonly squarerule_count: (a: number) => number;
    readonly squarerule_depths: (a: number) => [number, number];
    readonly squarerule_integrals: (a: number) => [number, number];
    readonly squarerule_labels: (a: number) => [number, number];
    readonly squarerule_points: (a: number) => [number, number];
    readonly squarerule_weights: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
