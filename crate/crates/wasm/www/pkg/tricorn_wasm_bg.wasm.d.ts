/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_scanpreview_free: (a: number, b: number) => void;
export const centers_report: () => [number, number, number, number];
export const parabolic_preview: (a: number, b: number, c: number) => [number, number, number];
export const render: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
export const scanpreview_components: (a: number) => number;
export const scanpreview_rgba: (a: number) => [number, number];
export const scanpreview_undetermined: (a: number) => number;
export const scanpreview_verified: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
