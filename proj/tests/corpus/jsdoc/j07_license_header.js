/**
 * Copyright 2026 Example Corp.
 * Licensed under the MIT license.
 */

function afterHeader(a) {
  return a;
}
