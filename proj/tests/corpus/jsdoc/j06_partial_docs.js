/**
 * Format a date.
 * @param {Date} date The date.
 */
function formatDate(date, pattern) {
  return date.toISOString() + pattern;
}

/**
 * Parse a number.
 * @param {string} text Input.
 * @param {number} radix Base.
 * @param {boolean} strict TODO: describe.
 */
function parseNumber(text, radix) {
  return parseInt(text, radix);
}
