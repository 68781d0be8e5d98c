/* tslint:disable */
/* eslint-disable */

/**
 * Reduced CE homology and the vanishing-locus table. `spec` is a builtin
 * name (`sl2`, `aff1`, `aff1x2`, `abelianN`) or a JSON structure-constant file.
 */
export function ce_homology(spec: string, sym_cap: number): string;

/**
 * `t ∘_i s` in the pre-Lie operad; trees in the `1(2,3(4))` notation.
 */
export function compose_trees(t: string, i: number, s: string): string;

/**
 * The `k`-th power of `x` in Pol, on `Δ_{2k}`, with values in the free
 * operad on `μ` and `l`.
 */
export function x_power(k: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly ce_homology: (a: number, b: number, c: number) => [number, number, number, number];
    readonly compose_trees: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly x_power: (a: number) => [number, number, number, number];
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
