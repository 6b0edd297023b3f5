use std::fmt::Write;

use serde::{Deserialize, Serialize};
use tamesc_core::TameParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::BudgetExceeded => "budget exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    pub t_range: String,
    pub d_t: String,
    pub dim_fixed: usize,
    pub weight: String,
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConductorReport {
    pub total: String,
    pub bands: Vec<BandReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorsReport {
    /// `phi` or `phi0`.
    pub parameter: String,
    /// Frobenius on the inertia invariants (tame parameter).
    pub frobenius: Vec<Vec<i64>>,
    /// Frobenius weights on `ker ad(N_0)` (principal parameter).
    pub frobenius_weights: Vec<i64>,
    pub l_at_0: String,
    pub l_at_1: String,
    /// `epsilon(s) = q^(k(1/2 - s))` up to a root of unity.
    pub eps_exponent: i64,
    pub conductor: Option<String>,
    pub gamma: String,
}

/// Result for one instance; quantities are exact and printed as strings,
/// evaluated at `q` when `q` is concrete.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub label: String,
    pub params: Option<TameParams>,
    pub q: String,
    pub index: Option<u64>,
    pub sigma_dim: Option<u64>,
    pub multiplicity: Option<String>,
    pub norm: Option<String>,
    pub irreducible: Option<bool>,
    pub dim_delta_formula: Option<String>,
    pub dim_delta_brute: Option<u64>,
    pub norm_index_ring: Option<u64>,
    pub norm_index_galois: Option<u64>,
    pub a_phi: Option<u64>,
    pub conductor: Option<ConductorReport>,
    pub factors: Option<FactorsReport>,
    pub thm2: Option<String>,
    pub thm3_lhs: Option<String>,
    pub thm3_rhs: Option<String>,
    pub verdict: Verdict,
    pub timing_ms: f64,
    pub notes: Vec<String>,
}

impl InstanceReport {
    pub fn new(id: &str, label: String, params: Option<TameParams>, q: Option<u64>) -> Self {
        InstanceReport {
            id: id.into(),
            label,
            params,
            q: q.map_or("q".into(), |q| q.to_string()),
            index: None,
            sigma_dim: None,
            multiplicity: None,
            norm: None,
            irreducible: None,
            dim_delta_formula: None,
            dim_delta_brute: None,
            norm_index_ring: None,
            norm_index_galois: None,
            a_phi: None,
            conductor: None,
            factors: None,
            thm2: None,
            thm3_lhs: None,
            thm3_rhs: None,
            verdict: Verdict::Pass,
            timing_ms: 0.0,
            notes: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[{}] {}", self.id, self.label);
        let mut line = |k: &str, v: String| {
            let _ = writeln!(s, "  {k:<24} {v}");
        };
        if let Some(v) = self.index {
            line("index (G : J)", v.to_string());
        }
        if let Some(v) = self.sigma_dim {
            line("dim sigma", v.to_string());
        }
        if let Some(v) = &self.norm {
            line("<chi, chi>", v.clone());
        }
        if let Some(v) = &self.multiplicity {
            line("multiplicity of psi", v.clone());
        }
        if let Some(v) = self.dim_delta_brute {
            line("dim delta (brute)", v.to_string());
        }
        if let Some(v) = &self.dim_delta_formula {
            line("dim delta (formula)", v.clone());
        }
        if let Some(v) = self.norm_index_ring {
            line("norm index (ring)", v.to_string());
        }
        if let Some(v) = self.norm_index_galois {
            line("norm index (Galois)", v.to_string());
        }
        if let Some(v) = self.a_phi {
            line("|A_phi|", v.to_string());
        }
        if let Some(c) = &self.conductor {
            line("conductor a(Ad phi)", c.total.clone());
            for b in &c.bands {
                line(
                    "  band",
                    format!(
                        "{}: dim fixed {}, weight {}, contributes {}",
                        b.t_range, b.dim_fixed, b.weight, b.contribution
                    ),
                );
            }
        }
        if let Some(f) = &self.factors {
            line("parameter", f.parameter.clone());
            if !f.frobenius.is_empty() {
                line("Frobenius on invariants", format!("{:?}", f.frobenius));
            }
            if !f.frobenius_weights.is_empty() {
                line("Frobenius weights", format!("{:?}", f.frobenius_weights));
            }
            line("L(0)", f.l_at_0.clone());
            line("L(1)", f.l_at_1.clone());
            line("epsilon(0) exponent", f.eps_exponent.to_string());
            if let Some(a) = &f.conductor {
                line("conductor", a.clone());
            }
            line("|gamma(0)|", f.gamma.clone());
        }
        if let Some(v) = &self.thm2 {
            line("formal degree", v.clone());
        }
        if let (Some(l), Some(r)) = (&self.thm3_lhs, &self.thm3_rhs) {
            line("gamma ratio / |A_phi|", l.clone());
            line("formal degree (rhs)", r.clone());
        }
        line("verdict", format!("{} ({:.1} ms)", self.verdict.as_str(), self.timing_ms));
        for n in &self.notes {
            line("note", n.clone());
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub instances: Vec<InstanceReport>,
}

impl Report {
    pub fn new(command: &str, instances: Vec<InstanceReport>) -> Self {
        Report {
            tool: "tamesc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            instances,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for inst in &self.instances {
            s.push_str(&inst.to_text());
        }
        if self.instances.len() > 1 {
            let pass = self.instances.iter().filter(|i| i.verdict == Verdict::Pass).count();
            let _ = writeln!(s, "{pass}/{} instances pass", self.instances.len());
        }
        s
    }

    /// 3 if any instance ran out of budget, else 1 if any failed, else 0.
    pub fn exit_code(&self) -> i32 {
        let vs: Vec<Verdict> = self.instances.iter().map(|i| i.verdict).collect();
        if vs.contains(&Verdict::BudgetExceeded) {
            3
        } else if vs.contains(&Verdict::Fail) {
            1
        } else {
            0
        }
    }
}
