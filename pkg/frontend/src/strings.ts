// All user-visible text lives here so labels can be localized later.

export const STRINGS = {
  appTitle: "Therapy planning console",
  assessmentHeading: "Child assessment",
  childLabel: "Child",
  noChild: "(no child record)",
  newChildLabel: "New child label",
  newChildAge: "Age (years)",
  createChild: "Create child",
  runConsultation: "Suggest a plan",
  outOfRange: (name: string, lo: number, hi: number) =>
    `${name} must be between ${lo} and ${hi}`,
  fuzzificationHeading: "Fuzzified assessment",
  rulesHeading: "Rule firings (min of clause degrees)",
  aggregationHeading: "Aggregated output levels (max per term)",
  outputHeading: "Suggested plan",
  crispLabel: "defuzzified value",
  revisionLabel: "rule-base revision",
  noRuleFired:
    "No applicable rule covers this assessment — review the knowledge base.",
  openEditor: "Open the rule editor",
  overrideHeading: "Record disagreement",
  overrideValue: "Your session count",
  overrideNote: "Note",
  overrideSubmit: "Record override",
  overrideBlocked:
    "An override must differ from the suggestion or carry a note.",
  overrideSaved: (id: string) => `Override recorded (${id}).`,
  editorHeading: "Rule editor",
  editorLoad: "Load current rules",
  editorSave: "Save",
  editorNoChanges: "No changes to save.",
  editorSaved: (revision: number) => `Saved; rule base is now at revision ${revision}.`,
  editorConflict: (current: number) =>
    `Someone saved revision ${current} while you were editing. Your text is kept; reload to see the server version.`,
  editorReload: "Reload server version",
  editorDiagnosticsHeading: "The server rejected the document:",
  genericError: (message: string) => `Request failed: ${message}`,
};
