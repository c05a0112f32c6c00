export function exported(name) {
  return `hello ${name}`;
}

export default function defaultExport(options) {
  return options || {};
}

export const arrow = (x, y) => x + y;

export class Widget {
  render(target) {
    target.innerHTML = '<div>{}</div>';
  }
}
