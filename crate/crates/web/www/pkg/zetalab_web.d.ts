/* tslint:disable */
/* eslint-disable */

/**
 * Region radii and per-region energies. Absent radii are NaN.
 */
export class RegionSplit {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `[cusp, bulk, evanescent]` LDA exchange energy.
     */
    lda_x(): Float64Array;
    /**
     * `[cusp, bulk, evanescent]` Thomas–Fermi kinetic energy.
     */
    tf(): Float64Array;
    electrons: number;
    r_c: number;
    r_e: number;
    r_s: number;
}

/**
 * `F_x(s)` for lda_x, gea_x, pbe_x or b88_x.
 */
export function enhancement(functional: string, s: Float64Array): Float64Array;

export function regions(a: number, b: number, zeta: number, threshold: number): RegionSplit;

/**
 * 4πr² n_ζ(r) of `a·e^{−br}` at each radius.
 */
export function scaledProfile(a: number, b: number, zeta: number, radii: Float64Array): Float64Array;

/**
 * Reduced gradient `s` of the scaled density at each radius.
 */
export function scaledS(a: number, b: number, zeta: number, radii: Float64Array): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_regionsplit_electrons: (a: number) => number;
    readonly __wbg_get_regionsplit_r_c: (a: number) => number;
    readonly __wbg_get_regionsplit_r_e: (a: number) => number;
    readonly __wbg_get_regionsplit_r_s: (a: number) => number;
    readonly __wbg_regionsplit_free: (a: number, b: number) => void;
    readonly __wbg_set_regionsplit_electrons: (a: number, b: number) => void;
    readonly __wbg_set_regionsplit_r_c: (a: number, b: number) => void;
    readonly __wbg_set_regionsplit_r_e: (a: number, b: number) => void;
    readonly __wbg_set_regionsplit_r_s: (a: number, b: number) => void;
    readonly enhancement: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly regions: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly regionsplit_lda_x: (a: number) => [number, number];
    readonly regionsplit_tf: (a: number) => [number, number];
    readonly scaledProfile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly scaledS: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
