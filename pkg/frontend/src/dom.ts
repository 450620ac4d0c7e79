/**
 * Small DOM helpers shared by the controllers.
 */

export const $ = <T extends HTMLElement = HTMLElement>(
  sel: string,
  ctx: Document | HTMLElement = document
): T | null => ctx.querySelector(sel);

export const $$ = <T extends HTMLElement = HTMLElement>(
  sel: string,
  ctx: Document | HTMLElement = document
): T[] => Array.from(ctx.querySelectorAll(sel));

export const escapeHtml = (value: unknown): string =>
  String(value ?? '')
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');

/** Set (or clear) the text of an inline error element. */
export const setErrorText = (el: HTMLElement | null, message: string): void => {
  if (!el) return;
  el.textContent = message;
  el.style.display = message ? '' : 'none';
};
