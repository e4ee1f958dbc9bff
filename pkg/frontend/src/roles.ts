/** The eight role description cards shown on the evaluation form. */

export interface RoleCard {
  id: string;     // canonical label the service accepts
  code: string;   // two-letter shorthand
  name: string;
  description: string;
}

export const ROLE_CARDS: RoleCard[] = [
  {
    id: "Plant",
    code: "PL",
    name: "Plant",
    description: "Creative and imaginative. Generates ideas and solves difficult problems.",
  },
  {
    id: "ResourceInvestigator",
    code: "RI",
    name: "Resource Investigator",
    description: "Outgoing and communicative. Explores opportunities and builds contacts beyond the team.",
  },
  {
    id: "Coordinator",
    code: "CO",
    name: "Coordinator",
    description: "Mature and confident. Keeps the whole project in view and delegates effectively.",
  },
  {
    id: "Shaper",
    code: "SH",
    name: "Shaper",
    description: "Challenging and dynamic. Has the drive and courage to overcome obstacles.",
  },
  {
    id: "MonitorEvaluator",
    code: "ME",
    name: "Monitor Evaluator",
    description: "Sober, strategic and discerning. Sees all options and judges accurately.",
  },
  {
    id: "Teamworker",
    code: "TW",
    name: "Teamworker",
    description: "Co-operative, perceptive and diplomatic. Listens well and averts friction.",
  },
  {
    id: "Implementer",
    code: "IM",
    name: "Implementer",
    description: "Practical, reliable and efficient. Turns ideas into actions and organizes the work.",
  },
  {
    id: "CompleterFinisher",
    code: "CF",
    name: "Completer Finisher",
    description: "Painstaking and conscientious. Searches out errors and polishes the result.",
  },
];
