/**
 * DOM glue: hash routing, event wiring, rendering. All state lives on the
 * server; every mutation waits for the response, then refetches (no
 * optimistic updates), so a failed request never corrupts what's shown.
 *
 * Identity is demo-grade query-parameter impersonation: open
 * ?as=<student_id> (or #/student/<student_id>) to act as that student.
 */

import { ApiClient, ApiError, type ActivityView } from "./api.js";
import {
  activityCard,
  errorBanner,
  mapRoleRollup,
  posteriorBars,
  progressLabel,
  roleCards,
  teammateList,
} from "./render.js";
import { activitiesOpenForFeedback, EvaluationProgress, submitEvaluation, teammatesOf } from "./student.js";
import { createActivity, performAction } from "./teacher.js";
import type { TeacherAction } from "./state.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? window.localStorage.getItem("apiBase") ?? "http://localhost:8080";
}

const api = new ApiClient(apiBase());
const app = document.getElementById("app")!;

function setContent(html: string, onRetry?: () => void): void {
  app.innerHTML = html;
  if (onRetry) {
    app.querySelector("[data-retry]")?.addEventListener("click", onRetry);
  }
}

function showError(err: unknown, retry: () => void): void {
  if (err instanceof ApiError) {
    setContent(errorBanner(err.code, err.message), retry);
  } else {
    setContent(errorBanner("network", String(err)), retry);
  }
}

// -- teacher dashboard ---------------------------------------------------------

const CREATE_FORM = `
  <form id="create-activity" class="card">
    <h3>New team activity</h3>
    <input name="module_id" placeholder="Module id" required>
    <input name="description" placeholder="Description" required>
    <label>Start <input name="start_date" type="date" required></label>
    <label>End <input name="end_date" type="date" required></label>
    <label>Min size <input name="size_min" type="number" value="4" min="1" required></label>
    <label>Max size <input name="size_max" type="number" value="6" min="1" required></label>
    <button type="submit">Create</button>
    <span id="create-error" class="error-inline"></span>
  </form>`;

async function renderTeacher(): Promise<void> {
  try {
    const { activities } = await api.listActivities();
    const cards = activities.map(activityCard).join("") ||
      "<p class=\"muted\">No activities yet.</p>";
    setContent(`<h2>Activities</h2>${CREATE_FORM}<div id="cards">${cards}</div>`);
    wireTeacher();
  } catch (err) {
    showError(err, renderTeacher);
  }
}

function wireTeacher(): void {
  const form = document.getElementById("create-activity") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const outcome = await createActivity(api, {
      module_id: String(data.get("module_id")),
      description: String(data.get("description")),
      start_date: String(data.get("start_date")),
      end_date: String(data.get("end_date")),
      size_min: Number(data.get("size_min")),
      size_max: Number(data.get("size_max")),
    });
    if (outcome.activity) {
      await renderTeacher();
    } else {
      document.getElementById("create-error")!.textContent =
        `${outcome.code}: ${outcome.message}`;
    }
  });

  app.querySelectorAll<HTMLButtonElement>("button[data-action]").forEach((button) => {
    button.addEventListener("click", async () => {
      const outcome = await performAction(
        api, button.dataset.activity!, button.dataset.action as TeacherAction);
      if (outcome.activity) {
        await renderTeacher();
      } else {
        window.alert(`${outcome.code}: ${outcome.message}`);
      }
    });
  });
}

// -- student evaluation flow -----------------------------------------------------

async function renderStudent(studentId: string): Promise<void> {
  try {
    const { activities } = await api.listActivities();
    const open = activitiesOpenForFeedback(activities)
      .filter((a) => teammatesOf(a, studentId).length > 0);
    if (open.length === 0) {
      setContent(`<h2>Evaluate teammates</h2>
        <p class="muted">No activity is collecting your feedback right now.</p>`);
      return;
    }
    const options = open.map((a) =>
      `<option value="${a.activity_id}">${a.activity_id} · ${a.description}</option>`).join("");
    setContent(`<h2>Evaluate teammates</h2>
      <label>Activity <select id="pick-activity">${options}</select></label>
      <div id="evaluation"></div>`);
    const select = document.getElementById("pick-activity") as HTMLSelectElement;
    const start = () => {
      const activity = open.find((a) => a.activity_id === select.value)!;
      renderEvaluation(activity, studentId);
    };
    select.addEventListener("change", start);
    start();
  } catch (err) {
    showError(err, () => renderStudent(studentId));
  }
}

function renderEvaluation(activity: ActivityView, studentId: string): void {
  const progress = new EvaluationProgress(teammatesOf(activity, studentId));
  const container = document.getElementById("evaluation")!;
  let picked: string | null = null;

  const draw = () => {
    const total = progress.teammates.length;
    const done = total - progress.remaining.length;
    container.innerHTML = `
      <p>Progress ${progressLabel(done, total)}</p>
      ${teammateList(progress.teammates, progress.doneSet)}
      <div id="cards">${roleCards(null)}</div>
      <button id="submit-eval" ${progress.complete ? "disabled" : ""}>Submit</button>
      <span id="eval-error" class="error-inline"></span>`;
    picked = null;
    container.querySelectorAll<HTMLLIElement>("li[data-teammate]").forEach((item) => {
      item.addEventListener("click", () => {
        picked = item.dataset.teammate!;
        container.querySelectorAll("li").forEach((li) => li.classList.remove("selected"));
        item.classList.add("selected");
      });
    });
    document.getElementById("submit-eval")!.addEventListener("click", async () => {
      const role = container.querySelector<HTMLInputElement>("input[name=role]:checked");
      const errorBox = document.getElementById("eval-error")!;
      if (!picked || !role) {
        errorBox.textContent = "pick a teammate and a role first";
        return;
      }
      const result = await submitEvaluation(api, activity.activity_id, studentId, picked, role.value);
      if (result.ok) {
        progress.markDone(picked);
        draw();
      } else {
        errorBox.textContent = `${result.code}: ${result.message}`;
      }
    });
  };
  draw();
}

// -- posterior view (teacher) -----------------------------------------------------

async function renderPosteriors(): Promise<void> {
  try {
    const { students } = await api.getRoster();
    const views = await Promise.all(students.map((s) => api.getPosterior(s.student_id)));
    const bars = views.map(posteriorBars).join("");
    setContent(`<h2>Role posteriors</h2>${mapRoleRollup(views)}${bars}`);
  } catch (err) {
    showError(err, renderPosteriors);
  }
}

// -- router ---------------------------------------------------------------------

function route(): void {
  const hash = window.location.hash || "#/teacher";
  const asStudent = new URLSearchParams(window.location.search).get("as");
  const studentMatch = /^#\/student\/(.+)$/.exec(hash);
  if (studentMatch) {
    void renderStudent(decodeURIComponent(studentMatch[1]!));
  } else if (hash === "#/posteriors") {
    void renderPosteriors();
  } else if (asStudent) {
    void renderStudent(asStudent);
  } else {
    void renderTeacher();
  }
}

window.addEventListener("hashchange", route);
route();
