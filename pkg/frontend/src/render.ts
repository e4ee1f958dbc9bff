/**
 * Pure HTML renderers. Every figure on screen comes verbatim from an API
 * payload (data-* attributes carry the raw values); these functions only
 * format, never recompute.
 */

import type { ActivityView, PosteriorView, RosterEntry, TeamView } from "./api.js";
import { ROLE_CARDS } from "./roles.js";
import { enabledActions, TEACHER_ACTIONS, type TeacherAction } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function statusBadge(status: string): string {
  return `<span class="badge badge-${status.toLowerCase()}">${status}</span>`;
}

const ACTION_LABEL: Record<TeacherAction, string> = {
  allocate: "Allocate teams",
  publish: "Publish",
  "open-feedback": "Open feedback",
  close: "Close",
};

export function actionButtons(activity: ActivityView): string {
  const enabled = new Set(enabledActions(activity.status));
  return TEACHER_ACTIONS.map((action) =>
    `<button data-action="${action}" data-activity="${activity.activity_id}"` +
    `${enabled.has(action) ? "" : " disabled"}>${ACTION_LABEL[action]}</button>`,
  ).join(" ");
}

function memberNames(members: RosterEntry[]): string {
  return members
    .map((m) => escapeHtml(m.display_name || m.student_id))
    .join(", ");
}

export function teamsTable(teams: TeamView[]): string {
  const rows = teams.map((team, i) =>
    `<tr><td>Team ${i + 1}</td><td>${memberNames(team.members)}</td>` +
    `<td class="num" data-expected-value="${team.expected_value}">` +
    `${team.expected_value.toFixed(4)}</td></tr>`,
  ).join("");
  return `<table class="teams"><thead><tr><th></th><th>Members</th>` +
    `<th>Expected value</th></tr></thead><tbody>${rows}</tbody></table>`;
}

export function activityCard(activity: ActivityView): string {
  const method = activity.method === null ? "" :
    ` <span class="method">method: ${escapeHtml(activity.method)}</span>`;
  const value = activity.value === null ? "" :
    ` <span class="num" data-objective="${activity.value}">objective: ${activity.value.toFixed(4)}</span>`;
  const teams = activity.teams === null ? "<p class=\"muted\">No teams yet.</p>"
    : teamsTable(activity.teams);
  return `<article class="card" data-activity-card="${activity.activity_id}">` +
    `<header><h3>${escapeHtml(activity.activity_id)} · ${escapeHtml(activity.module_id)}</h3>` +
    `${statusBadge(activity.status)}</header>` +
    `<p>${escapeHtml(activity.description)}</p>` +
    `<p class="muted">${activity.start_date} → ${activity.end_date} · ` +
    `teams of ${activity.size_min}–${activity.size_max}${method}${value}</p>` +
    `${teams}<footer>${actionButtons(activity)}</footer></article>`;
}

/** Eight bars whose widths come from the API probabilities (one decimal percent). */
export function posteriorBars(view: PosteriorView): string {
  const rows = ROLE_CARDS.map((card) => {
    const p = view.posterior[card.id] ?? 0;
    const isMap = card.id === view.map_role;
    return `<div class="bar-row${isMap ? " map" : ""}">` +
      `<span class="bar-label">${card.name}</span>` +
      `<span class="bar" style="width:${(p * 100).toFixed(1)}%"></span>` +
      `<span class="bar-value" data-prob="${p}">${(p * 100).toFixed(1)}%</span>` +
      `</div>`;
  }).join("");
  const who = escapeHtml(view.display_name || view.student_id);
  return `<section class="posterior" data-student="${view.student_id}">` +
    `<h3>${who}</h3><p>MAP role: <strong>${view.map_role}</strong></p>${rows}</section>`;
}

/** Histogram of MAP roles across the roster (a projection, not a recomputation). */
export function mapRoleRollup(views: PosteriorView[]): string {
  const counts = new Map<string, number>();
  for (const view of views) {
    counts.set(view.map_role, (counts.get(view.map_role) ?? 0) + 1);
  }
  const rows = ROLE_CARDS.map((card) => {
    const count = counts.get(card.id) ?? 0;
    return `<div class="bar-row"><span class="bar-label">${card.name}</span>` +
      `<span class="bar" style="width:${views.length ? (count / views.length) * 100 : 0}%"></span>` +
      `<span class="bar-value" data-count="${count}">${count}</span></div>`;
  }).join("");
  return `<section class="rollup"><h3>MAP roles across the class</h3>${rows}</section>`;
}

export function roleCards(selected: string | null): string {
  return ROLE_CARDS.map((card) =>
    `<label class="role-card${selected === card.id ? " selected" : ""}">` +
    `<input type="radio" name="role" value="${card.id}"${selected === card.id ? " checked" : ""}>` +
    `<strong>${card.name} (${card.code})</strong><br>${card.description}</label>`,
  ).join("");
}

export function teammateList(teammates: RosterEntry[], done: ReadonlySet<string>): string {
  const items = teammates.map((mate) => {
    const finished = done.has(mate.student_id);
    return `<li data-teammate="${mate.student_id}" class="${finished ? "done" : "pending"}">` +
      `${escapeHtml(mate.display_name || mate.student_id)}${finished ? " ✓" : ""}</li>`;
  }).join("");
  return `<ul class="teammates">${items}</ul>`;
}

export function progressLabel(done: number, total: number): string {
  return `${done}/${total}`;
}

export function errorBanner(code: string, message: string): string {
  return `<div class="error" role="alert"><strong>${escapeHtml(code)}</strong>: ` +
    `${escapeHtml(message)} <button data-retry>Retry</button></div>`;
}
