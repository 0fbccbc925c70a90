/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_regionsplit_electrons: (a: number) => number;
export const __wbg_get_regionsplit_r_c: (a: number) => number;
export const __wbg_get_regionsplit_r_e: (a: number) => number;
export const __wbg_get_regionsplit_r_s: (a: number) => number;
export const __wbg_regionsplit_free: (a: number, b: number) => void;
export const __wbg_set_regionsplit_electrons: (a: number, b: number) => void;
export const __wbg_set_regionsplit_r_c: (a: number, b: number) => void;
export const __wbg_set_regionsplit_r_e: (a: number, b: number) => void;
export const __wbg_set_regionsplit_r_s: (a: number, b: number) => void;
export const enhancement: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const regions: (a: number, b: number, c: number, d: number) => [number, number, number];
export const regionsplit_lda_x: (a: number) => [number, number];
export const regionsplit_tf: (a: number) => [number, number];
export const scaledProfile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const scaledS: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
