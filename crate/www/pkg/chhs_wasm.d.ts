/* tslint:disable */
/* eslint-disable */

/**
 * The smooth cosine-product benchmark flow on [0, 3.2]^2.
 */
export class BenchmarkDemo {
    free(): void;
    [Symbol.dispose](): void;
    energy(): number;
    fh(): number;
    last_cycles(): number;
    mass(): number;
    /**
     * `n` cells per side (power of two); the time step follows the
     * refinement path dt = 0.05 h.
     */
    constructor(n: number, gamma: number);
    phi(): Float32Array;
    series_energy(): Float64Array;
    series_fh(): Float64Array;
    series_t(): Float64Array;
    size(): number;
    step(count: number): void;
    time(): number;
}

/**
 * Spinodal decomposition of a random binary mixture in a Hele-Shaw cell.
 */
export class SpinodalDemo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Discrete free energy E_h at the current step.
     */
    energy(): number;
    /**
     * Dissipated (history-augmented) energy F_h.
     */
    fh(): number;
    /**
     * V-cycles the last step's nonlinear solve needed.
     */
    last_cycles(): number;
    mass(): number;
    /**
     * `n` cells per side (power of two), surface-tension coupling `gamma`
     * (0 disables the flow), RNG `seed`, time step `dt`.
     */
    constructor(n: number, gamma: number, seed: number, dt: number);
    /**
     * Interior phase values, row-major, length size*size.
     */
    phi(): Float32Array;
    /**
     * E_h per recorded step.
     */
    series_energy(): Float64Array;
    /**
     * F_h per recorded step (non-increasing by construction).
     */
    series_fh(): Float64Array;
    /**
     * Time stamps of all recorded steps.
     */
    series_t(): Float64Array;
    size(): number;
    /**
     * Advance `count` time steps.
     */
    step(count: number): void;
    step_count(): number;
    time(): number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_benchmarkdemo_free: (a: number, b: number) => void;
    readonly __wbg_spinodaldemo_free: (a: number, b: number) => void;
    readonly benchmarkdemo_energy: (a: number) => number;
    readonly benchmarkdemo_fh: (a: number) => number;
    readonly benchmarkdemo_last_cycles: (a: number) => number;
    readonly benchmarkdemo_mass: (a: number) => number;
    readonly benchmarkdemo_new: (a: number, b: number) => [number, number, number];
    readonly benchmarkdemo_phi: (a: number) => [number, number];
    readonly benchmarkdemo_series_energy: (a: number) => [number, number];
    readonly benchmarkdemo_series_fh: (a: number) => [number, number];
    readonly benchmarkdemo_series_t: (a: number) => [number, number];
    readonly benchmarkdemo_size: (a: number) => number;
    readonly benchmarkdemo_step: (a: number, b: number) => [number, number];
    readonly benchmarkdemo_time: (a: number) => number;
    readonly spinodaldemo_energy: (a: number) => number;
    readonly spinodaldemo_fh: (a: number) => number;
    readonly spinodaldemo_last_cycles: (a: number) => number;
    readonly spinodaldemo_mass: (a: number) => number;
    readonly spinodaldemo_new: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly spinodaldemo_phi: (a: number) => [number, number];
    readonly spinodaldemo_series_energy: (a: number) => [number, number];
    readonly spinodaldemo_series_fh: (a: number) => [number, number];
    readonly spinodaldemo_series_t: (a: number) => [number, number];
    readonly spinodaldemo_step: (a: number, b: number) => [number, number];
    readonly spinodaldemo_step_count: (a: number) => number;
    readonly spinodaldemo_size: (a: number) => number;
    readonly spinodaldemo_time: (a: number) => number;
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
