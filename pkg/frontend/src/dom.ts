/** Small DOM construction helpers shared by the views. */

export function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function option(doc: Document, value: string, label: string): HTMLOptionElement {
  const node = el(doc, "option", { value }, label);
  return node;
}

/** Debounced async runner with an awaitable idle point.

    Edits poke it; the task fires once input settles. A poke during a
    run queues exactly one rerun, so the last edit always wins. */
export class Debounced {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private running = false;
  private rerun = false;
  private waiters: Array<() => void> = [];

  constructor(
    private readonly delayMs: number,
    private readonly task: () => Promise<void>,
  ) {}

  poke(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.run();
    }, this.delayMs);
  }

  /** Run the task now, bypassing the delay. */
  async flush(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    await this.run();
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.settle();
  }

  whenIdle(): Promise<void> {
    if (this.timer === null && !this.running) {
      return Promise.resolve();
    }
    return new Promise((resolve) => {
      this.waiters.push(resolve);
    });
  }

  private async run(): Promise<void> {
    if (this.running) {
      this.rerun = true;
      return;
    }
    this.running = true;
    try {
      do {
        this.rerun = false;
        await this.task();
      } while (this.rerun);
    } finally {
      this.running = false;
      this.settle();
    }
  }

  private settle(): void {
    if (this.timer === null && !this.running) {
      for (const waiter of this.waiters.splice(0)) {
        waiter();
      }
    }
  }
}
