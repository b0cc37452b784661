/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_squarerule_free: (a: number, b: number) => void;
export const convergence: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const heavisideSamples: (a: number, b: number) => [number, number, number, number];
export const squareRule: (a: number, b: number, c: number, d: number) => [number, number, number];
export const squarerule_cells: (a: number) => [number, number];
export const squarerule_count: (a: number) => number;
export const squarerule_depths: (a: number) => [number, number];
export const squarerule_integrals: (a: number) => [number, number];
export const squarerule_labels: (a: number) => [number, number];
export const squarerule_points: (a: number) => [number, number];
export const squarerule_weights: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
