/* tslint:disable */
/* eslint-disable */

/**
 * A protocol session held by the page.
 */
export class Lab {
    free(): void;
    [Symbol.dispose](): void;
    constructor();
    /**
     * Handle one command line and return the reply line.
     */
    send(line: string): string;
}

/**
 * Paraxial and traced image of the bench as JSON.
 */
export function bench_readout(orientation: string, radius: number, axial: number, height: number, exact: boolean): string;

/**
 * SVG figure of the bench: mirror, object at (`axial`, `height`), rays
 * and image.
 */
export function bench_svg(orientation: string, radius: number, axial: number, height: number, exact: boolean): string;

/**
 * Image positions for concave mirrors of the given radii, as JSON rows.
 */
export function plane_limit(p_ob: number, radii: Float64Array): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_lab_free: (a: number, b: number) => void;
    readonly bench_readout: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly bench_svg: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly lab_new: () => number;
    readonly lab_send: (a: number, b: number, c: number) => [number, number];
    readonly plane_limit: (a: number, b: number, c: number) => [number, number, number, number];
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
