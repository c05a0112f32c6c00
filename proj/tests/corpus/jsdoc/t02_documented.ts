/**
 * Clamp a value.
 * @param {number} value Input.
 * @param {number} min Lower bound.
 * @param {number} max Upper bound.
 * @return {number} The clamped value.
 */
export function clamp(value: number, min: number, max: number): number {
  return Math.min(Math.max(value, min), max);
}

export abstract class Shape {
  /**
   * Area of the shape.
   * @return {number} Area.
   */
  abstract area(): number;

  describe(prefix: string = ''): string {
    return `${prefix}${this.area()}`;
  }
}
