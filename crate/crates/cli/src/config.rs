use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use tamesc_core::params::DEFAULT_W;
use tamesc_core::residue::zmod::pow_mod;
use tamesc_core::TameParams;

use crate::args::InstanceArgs;
use crate::run::CliError;

/// One named instance; every field may be omitted and filled by flags or defaults.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub p: Option<u64>,
    pub n: Option<usize>,
    pub e: Option<usize>,
    pub f: Option<usize>,
    pub r: Option<u32>,
    pub m: Option<u64>,
    pub c: Option<u64>,
    pub w: Option<i64>,
    pub q: Option<u64>,
    pub symbolic: Option<bool>,
}

impl InstanceSpec {
    pub fn from_args(a: &InstanceArgs) -> Self {
        InstanceSpec {
            p: a.p,
            n: a.n,
            e: a.e,
            f: a.f,
            r: a.r,
            m: a.m,
            c: a.c,
            w: a.w,
            q: a.q,
            symbolic: a.symbolic.then_some(true),
        }
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(&self, over: &InstanceSpec) -> Self {
        InstanceSpec {
            p: over.p.or(self.p),
            n: over.n.or(self.n),
            e: over.e.or(self.e),
            f: over.f.or(self.f),
            r: over.r.or(self.r),
            m: over.m.or(self.m),
            c: over.c.or(self.c),
            w: over.w.or(self.w),
            q: over.q.or(self.q),
            symbolic: over.symbolic.or(self.symbolic),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic.unwrap_or(false) || self.p.is_none()
    }

    /// `(n, e, f)` with the missing ones inferred from `n = e f`.
    pub fn degrees(&self) -> Result<(usize, usize, usize), CliError> {
        let bad = |msg: String| Err(CliError::Invalid(msg));
        let (n, e, f) = match (self.n, self.e, self.f) {
            (Some(n), Some(e), Some(f)) => (n, e, f),
            (Some(n), Some(e), None) if e > 0 && n % e == 0 => (n, e, n / e),
            (Some(n), None, Some(f)) if f > 0 && n % f == 0 => (n, n / f, f),
            (Some(n), None, None) => (n, 1, n),
            (None, Some(e), Some(f)) => (e * f, e, f),
            (None, None, None) => return bad("missing --n (or --e and --f)".into()),
            _ => return bad(format!("cannot infer n = e f from n = {:?}, e = {:?}, f = {:?}", self.n, self.e, self.f)),
        };
        if e == 0 || f == 0 || n != e * f {
            return bad(format!("n = {n} must equal e*f = {e}*{f}"));
        }
        Ok((n, e, f))
    }

    /// Full parameters, validated against `p` when given; `p` is dropped for symbolic runs.
    /// Without an explicit `m`, the default is `p mod e` when `e | p^f - 1` and `1` otherwise.
    pub fn to_params(&self) -> Result<TameParams, CliError> {
        let (n, e, f) = self.degrees()?;
        let r = self.r.ok_or_else(|| CliError::Invalid("missing --r".into()))?;
        let eu = e as u64;
        let default_m = match self.p {
            _ if e == 1 => 0,
            Some(p) if pow_mod(p % eu, f as u64, eu) == 1 => p % eu,
            _ => 1,
        };
        let mut params = TameParams {
            p: self.p,
            n,
            e,
            f,
            r,
            m: self.m.unwrap_or(default_m),
            c: self.c.unwrap_or(0),
            w: self.w.unwrap_or(DEFAULT_W),
        };
        params.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
        if self.symbolic.unwrap_or(false) {
            params.p = None;
        }
        Ok(params)
    }
}

/// Named instances from a TOML file, each a table of parameters.
pub fn load(path: &Path) -> Result<BTreeMap<String, InstanceSpec>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str) -> Result<BTreeMap<String, InstanceSpec>, toml::de::Error> {
    toml::from_str(text)
}

/// The instances to run: the file's entries with flags applied, or a single `cli` instance.
pub fn resolve(args: &InstanceArgs) -> Result<Vec<(String, InstanceSpec)>, CliError> {
    let flags = InstanceSpec::from_args(args);
    match &args.config {
        Some(path) => {
            let entries = load(path)?;
            if entries.is_empty() {
                return Err(CliError::Invalid(format!("{} defines no instances", path.display())));
            }
            Ok(entries.into_iter().map(|(id, spec)| (id, spec.overridden_by(&flags))).collect())
        }
        None => Ok(vec![("cli".into(), flags)]),
    }
}
