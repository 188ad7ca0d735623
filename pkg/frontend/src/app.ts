import { TimelineClient, errorMessage, fetchHealth } from "./api.js";
import { renderError, renderLoading, renderTimeline } from "./render.js";

const EXAMPLE_QUERIES = ["Saint Petersburg", "Mumbai", "Malawi", "Edo",
  "Muhammad Ali", "Microsoft Kinect"];

export function initApp(fetchImpl: typeof fetch = fetch): void {
  const form = document.querySelector<HTMLFormElement>("#search-form")!;
  const input = document.querySelector<HTMLInputElement>("#search-input")!;
  const validation = document.querySelector<HTMLElement>("#validation")!;
  const results = document.querySelector<HTMLElement>("#results")!;
  const chips = document.querySelector<HTMLElement>("#chips")!;
  const footer = document.querySelector<HTMLElement>("#version")!;

  const client = new TimelineClient(fetchImpl);

  async function submit(value: string): Promise<void> {
    validation.textContent = "";
    if (!value.trim()) {
      validation.textContent = "Enter an article title or a web address.";
      return;
    }
    renderLoading(results);
    try {
      const timeline = await client.submit(value);
      if (timeline === null) return; // superseded by a newer submission
      renderTimeline(results, timeline.entries);
    } catch (err) {
      const message = errorMessage(err);
      if (message) renderError(results, message);
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit(input.value);
  });

  for (const example of EXAMPLE_QUERIES) {
    const chip = document.createElement("button");
    chip.type = "button";
    chip.className = "chip";
    chip.textContent = example;
    chip.addEventListener("click", () => {
      input.value = example;
      void submit(example);
    });
    chips.appendChild(chip);
  }

  fetchHealth(fetchImpl)
    .then((health) => {
      footer.textContent = `models ${health.model_version}`;
    })
    .catch(() => {
      footer.textContent = "service unavailable";
    });
}
