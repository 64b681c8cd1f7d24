/* tslint:disable */
/* eslint-disable */

/**
 * Result of a parabolic-exclusion scan of the reference rectangle.
 */
export class ScanPreview {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly components: number;
    readonly rgba: Uint8Array;
    readonly undetermined: number;
    readonly verified: number;
}

/**
 * Plain-text report of the four parameters with `f_c^3(0) = 0`.
 */
export function centers_report(): string;

/**
 * Scans the reference rectangle for "no period-9 cycle near the critical
 * point has multiplier one" down to `depth` (capped at 8) and rasterizes it:
 * cyan where certified, red where undetermined.
 */
export function parabolic_preview(depth: number, width: number, height: number): ScanPreview;

/**
 * RGBA escape-time image. `mode`: 0 tricorn, 1 Mandelbrot, 2 Julia at `(jre, jim)`.
 */
export function render(width: number, height: number, re_lo: number, re_hi: number, im_lo: number, im_hi: number, maxiter: number, mode: number, jre: number, jim: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_scanpreview_free: (a: number, b: number) => void;
    readonly centers_report: () => [number, number, number, number];
    readonly parabolic_preview: (a: number, b: number, c: number) => [number, number, number];
    readonly render: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly scanpreview_components: (a: number) => number;
    readonly scanpreview_rgba: (a: number) => [number, number];
    readonly scanpreview_undetermined: (a: number) => number;
    readonly scanpreview_verified: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
