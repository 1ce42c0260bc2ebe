/* tslint:disable */
/* eslint-disable */

/**
 * Attainable (equality, efficiency) pairs at one salience and the optimum on them.
 */
export class EqualityEfficiency {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly equality: Float64Array;
    readonly mu: Float64Array;
    readonly optimal_equality: number;
    readonly optimal_mu: number;
    readonly optimal_tau: number;
    /**
     * Price of equality at the optimum.
     */
    readonly price: number;
}

/**
 * Optimal states along a salience grid.
 */
export class FrontierSeries {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly equality: Float64Array;
    readonly mu: Float64Array;
    readonly s: Float64Array;
    readonly tau: Float64Array;
    readonly tau_perceived: Float64Array;
    readonly welfare: Float64Array;
}

export function equality_efficiency(rho: number, epsilon: number, s: number, n_agents: number, n_points: number): EqualityEfficiency;

export function frontier(rho: number, epsilon: number, n_agents: number, n_points: number): FrontierSeries;

/**
 * `[tau_l, tau_c, lowest feasible salience]` reproducing `(tau, s)`.
 */
export function two_tax(tau: number, s: number, s_c: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_equalityefficiency_free: (a: number, b: number) => void;
    readonly __wbg_frontierseries_free: (a: number, b: number) => void;
    readonly equality_efficiency: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly equalityefficiency_equality: (a: number) => [number, number];
    readonly equalityefficiency_mu: (a: number) => [number, number];
    readonly equalityefficiency_optimal_equality: (a: number) => number;
    readonly equalityefficiency_optimal_mu: (a: number) => number;
    readonly equalityefficiency_optimal_tau: (a: number) => number;
    readonly equalityefficiency_price: (a: number) => number;
    readonly frontier: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly frontierseries_equality: (a: number) => [number, number];
    readonly frontierseries_mu: (a: number) => [number, number];
    readonly frontierseries_s: (a: number) => [number, number];
    readonly frontierseries_tau: (a: number) => [number, number];
    readonly frontierseries_tau_perceived: (a: number) => [number, number];
    readonly frontierseries_welfare: (a: number) => [number, number];
    readonly two_tax: (a: number, b: number, c: number) => [number, number, number, number];
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
