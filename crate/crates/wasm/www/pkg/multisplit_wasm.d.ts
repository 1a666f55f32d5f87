/* tslint:disable */
/* eslint-disable */

/**
 * Deblurring of the synthetic test image.
 */
export class DeblurDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly isnr: Float64Array;
    readonly objective: Float64Array;
    readonly observed: Float64Array;
    readonly restored: Float64Array;
    readonly size: number;
    readonly status: string;
    /**
     * Row-major images on the 0..=255 scale.
     */
    readonly truth: Float64Array;
}

/**
 * A 2-D Fermat-Weber run: the best block per iteration and the objectives.
 */
export class FwDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Unsmoothed objective along the path.
     */
    readonly objective: Float64Array;
    /**
     * Reference optimum `x, y`.
     */
    readonly optimum: Float64Array;
    /**
     * Interleaved `x, y` of the best block at every recorded iteration.
     */
    readonly path: Float64Array;
    readonly relerr: Float64Array;
    readonly status: string;
}

export function deblur(size: number, algorithm: string, mu: number, iters: number, seed: number): DeblurDemo;

/**
 * Runs `algorithm` ("MSA", "FaMSA", "FaMSA-s", "Grad", "Nest") on the
 * planar points `points = [x0, y0, x1, y1, ...]` from their centroid.
 */
export function fermat_weber(points: Float64Array, algorithm: string, tau: number, rho: number, iters: number): FwDemo;

/**
 * Samples `|s|` and its smoothed version on `[-half_width, half_width]`,
 * interleaved as `s, |s|, huber(s)`.
 */
export function smoothing_curve(rho: number, half_width: number, samples: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_deblurdemo_free: (a: number, b: number) => void;
    readonly __wbg_fwdemo_free: (a: number, b: number) => void;
    readonly deblur: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly deblurdemo_isnr: (a: number) => [number, number];
    readonly deblurdemo_objective: (a: number) => [number, number];
    readonly deblurdemo_observed: (a: number) => [number, number];
    readonly deblurdemo_restored: (a: number) => [number, number];
    readonly deblurdemo_size: (a: number) => number;
    readonly deblurdemo_status: (a: number) => [number, number];
    readonly deblurdemo_truth: (a: number) => [number, number];
    readonly fermat_weber: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly fwdemo_objective: (a: number) => [number, number];
    readonly fwdemo_optimum: (a: number) => [number, number];
    readonly fwdemo_path: (a: number) => [number, number];
    readonly fwdemo_relerr: (a: number) => [number, number];
    readonly fwdemo_status: (a: number) => [number, number];
    readonly smoothing_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
