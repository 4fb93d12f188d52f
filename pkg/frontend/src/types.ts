// Wire types mirroring the service's response models.

export interface Universe {
  lo: number;
  hi: number;
}

export interface Term {
  name: string;
  kind: string;
  params: unknown[];
  vertices: [number, number][];
}

export interface Variable {
  name: string;
  role: "input" | "output";
  universe: Universe;
  terms: Term[];
}

export interface Fuzzified {
  variable: string;
  crisp: number;
  degrees: Record<string, number>;
}

export interface Firing {
  rule_id: string;
  clause_degrees: [string, string, number][];
  alpha: number;
  consequent: { variable: string; term: string };
}

export interface Aggregate {
  variable: Variable;
  term_alphas: Record<string, number>;
}

export interface Recommendation {
  low_count: number;
  high_count: number;
  preferred: number;
  note: string;
}

export interface ConsultationResult {
  inputs: Record<string, number>;
  fuzzified: Fuzzified[];
  firings: Firing[];
  aggregate: Aggregate;
  crisp_output: number;
  recommendation: Recommendation;
  kb_revision: number;
}

export interface StoredConsultation {
  id: string;
  child_id: string | null;
  created_at: string;
  result: ConsultationResult;
}

export interface KbResponse {
  document: string;
  revision: number;
  variables: Variable[];
}

export interface Diagnostic {
  severity: "error" | "warning";
  line: number;
  col: number;
  message: string;
  code: string;
}

export interface ErrorBody {
  code: string;
  message: string;
  diagnostics?: Diagnostic[];
  current_revision?: number;
}

export interface Child {
  id: string;
  display_label: string;
  age_years: number;
  created_at: string;
}

export interface OverrideRecord {
  id: string;
  consultation_id: string | null;
  therapist_value: number;
  note: string;
  created_at: string;
  kb_revision: number;
}
