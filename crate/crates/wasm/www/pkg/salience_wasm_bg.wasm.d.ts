/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_equalityefficiency_free: (a: number, b: number) => void;
export const __wbg_frontierseries_free: (a: number, b: number) => void;
export const equality_efficiency: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const equalityefficiency_equality: (a: number) => [number, number];
export const equalityefficiency_mu: (a: number) => [number, number];
export const equalityefficiency_optimal_equality: (a: number) => number;
export const equalityefficiency_optimal_mu: (a: number) => number;
export const equalityefficiency_optimal_tau: (a: number) => number;
export const equalityefficiency_price: (a: number) => number;
export const frontier: (a: number, b: number, c: number, d: number) => [number, number, number];
export const frontierseries_equality: (a: number) => [number, number];
export const frontierseries_mu: (a: number) => [number, number];
export const frontierseries_s: (a: number) => [number, number];
export const frontierseries_tau: (a: number) => [number, number];
export const frontierseries_tau_perceived: (a: number) => [number, number];
export const frontierseries_welfare: (a: number) => [number, number];
export const two_tax: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
