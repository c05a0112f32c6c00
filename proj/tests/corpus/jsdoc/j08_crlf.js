function crlfOne(a, b) {
  return a + b;
}

/**
 * Already documented.
 * @param {string} s Input.
 */
function crlfTwo(s) {
  return s.trim();
}
