/* tslint:disable */
/* eslint-disable */

/**
 * Stepper state owned by the page.
 */
export class Simulation {
    free(): void;
    [Symbol.dispose](): void;
    diagnostics(): Float64Array;
    model(): string;
    constructor(config: string);
    step(steps: number): void;
    time(): number;
    u(): Float64Array;
    x(): Float64Array;
}

/**
 * Rows of `[ξ, BO, ILW(δ), (3/δ)·ILW(δ), KdV]` for `ξ` in `[0, xi_max]`,
 * flattened row-major. All entries are `Im Λ(ξ)`.
 */
export function dispersion_table(delta: number, xi_max: number, count: number): Float64Array;

export function extension_heatmap(n: number, length: number, width: number, delta: number, y_max: number, rows: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_simulation_free: (a: number, b: number) => void;
    readonly dispersion_table: (a: number, b: number, c: number) => [number, number];
    readonly extension_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly simulation_diagnostics: (a: number) => [number, number, number, number];
    readonly simulation_model: (a: number) => [number, number];
    readonly simulation_new: (a: number, b: number) => [number, number, number];
    readonly simulation_step: (a: number, b: number) => [number, number];
    readonly simulation_time: (a: number) => number;
    readonly simulation_u: (a: number) => [number, number];
    readonly simulation_x: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
