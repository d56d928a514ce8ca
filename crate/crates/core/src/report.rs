//! Outcome records for identity checks.

/// Result of checking one identity instance: the measured p-adic agreement
/// between both sides against the digits the check demanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// Registry name, e.g. "zeta.reflection".
    pub name: String,
    /// Human-readable instance parameters.
    pub params: String,
    /// Certified digits of agreement between both sides.
    pub agreement_digits: i64,
    /// Digits the check demanded.
    pub required_digits: i64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: &str, params: String, agreement: i64, required: i64) -> Self {
        IdentityReport {
            name: name.to_string(),
            params,
            agreement_digits: agreement,
            required_digits: required,
            pass: agreement >= required,
        }
    }

    /// A report for an identity checked exactly over Q.
    pub fn exact(name: &str, params: String, holds: bool, required: i64) -> Self {
        IdentityReport {
            name: name.to_string(),
            params,
            agreement_digits: if holds { required } else { 0 },
            required_digits: required,
            pass: holds,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "params": self.params,
            "agreement_digits": self.agreement_digits,
            "required_digits": self.required_digits,
            "pass": self.pass,
        })
    }
}
