/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_deblurdemo_free: (a: number, b: number) => void;
export const __wbg_fwdemo_free: (a: number, b: number) => void;
export const deblur: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const deblurdemo_isnr: (a: number) => [number, number];
export const deblurdemo_objective: (a: number) => [number, number];
export const deblurdemo_observed: (a: number) => [number, number];
export const deblurdemo_restored: (a: number) => [number, number];
export const deblurdemo_size: (a: number) => number;
export const deblurdemo_status: (a: number) => [number, number];
export const deblurdemo_truth: (a: number) => [number, number];
export const fermat_weber: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const fwdemo_objective: (a: number) => [number, number];
export const fwdemo_optimum: (a: number) => [number, number];
export const fwdemo_path: (a: number) => [number, number];
export const fwdemo_relerr: (a: number) => [number, number];
export const fwdemo_status: (a: number) => [number, number];
export const smoothing_curve: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
