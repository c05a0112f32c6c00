function outer(config) {
  function inner(step) {
    return step * 2;
  }
  const helper = function (x) {
    return inner(x);
  };
  return helper(config.start);
}

const obj = {
  method(arg) {
    return arg;
  },
};
