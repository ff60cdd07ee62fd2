/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_benchmarkdemo_free: (a: number, b: number) => void;
export const __wbg_spinodaldemo_free: (a: number, b: number) => void;
export const benchmarkdemo_energy: (a: number) => number;
export const benchmarkdemo_fh: (a: number) => number;
export const benchmarkdemo_last_cycles: (a: number) => number;
export const benchmarkdemo_mass: (a: number) => number;
export const benchmarkdemo_new: (a: number, b: number) => [number, number, number];
export const benchmarkdemo_phi: (a: number) => [number, number];
export const benchmarkdemo_series_energy: (a: number) => [number, number];
export const benchmarkdemo_series_fh: (a: number) => [number, number];
export const benchmarkdemo_series_t: (a: number) => [number, number];
export const benchmarkdemo_size: (a: number) => number;
export const benchmarkdemo_step: (a: number, b: number) => [number, number];
export const benchmarkdemo_time: (a: number) => number;
export const spinodaldemo_energy: (a: number) => number;
export const spinodaldemo_fh: (a: number) => number;
export const spinodaldemo_last_cycles: (a: number) => number;
export const spinodaldemo_mass: (a: number) => number;
export const spinodaldemo_new: (a: number, b: number, c: number, d: number) => [number, number, number];
export const spinodaldemo_phi: (a: number) => [number, number];
export const spinodaldemo_series_energy: (a: number) => [number, number];
export const spinodaldemo_series_fh: (a: number) => [number, number];
export const spinodaldemo_series_t: (a: number) => [number, number];
export const spinodaldemo_step: (a: number, b: number) => [number, number];
export const spinodaldemo_step_count: (a: number) => number;
export const spinodaldemo_size: (a: number) => number;
export const spinodaldemo_time: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
