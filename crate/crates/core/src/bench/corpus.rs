//! Test integrands with endpoint singularities and their reference values.
//!
//! | id    | f(x)                                   | alpha | beta | log |
//! |-------|----------------------------------------|-------|------|-----|
//! | F1a   | (1-x)^{1/2} e^x                        | 1/2   | 0    | no  |
//! | F1b   | (1-x)^{3/4} (1+x)^{1/4} e^x            | 3/4   | 1/4  | no  |
//! | F2a   | (1-x) log(1-x) cos(x+1)                | 1     | 0    | yes |
//! | F2b   | (1-x) (1+x)^{1/2} log(1-x) cos(x+1)    | 1     | 1/2  | yes |
//! | F3a   | arccos(x^2)                            | 1/2   | 1/2  | no  |
//! | F3b   | arccos(x^6)                            | 1/2   | 1/2  | no  |
//!
//! `arccos(x^{2m})` is not of product form but behaves like
//! `sqrt(1-x^2) g(x)` with `g(+-1) = sqrt(2m)`. The remaining entries have
//! closed-form integrals and serve as oracle checks.

use std::f64::consts::E;

use super::oracle;
use crate::engine::Integrand;
use crate::singular::{EndpointValues, SingularityProfile};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    ClosedForm(f64),
    Oracle,
}

#[derive(Debug, Clone)]
pub struct CorpusFunction {
    pub id: &'static str,
    pub formula: &'static str,
    pub integrand: Integrand,
    pub reference: Reference,
}

impl CorpusFunction {
    pub fn profile(&self) -> &SingularityProfile {
        self.integrand
            .profile()
            .expect("corpus functions always carry a profile")
    }

    /// The closed form if there is one, else tanh-sinh at `tol`.
    pub fn reference_value(&self, tol: f64) -> Result<f64> {
        match self.reference {
            Reference::ClosedForm(v) => Ok(v),
            Reference::Oracle => self.oracle_value(tol),
        }
    }

    pub fn oracle_value(&self, tol: f64) -> Result<f64> {
        let f = self.integrand.clone();
        oracle::tanh_sinh(move |x| f.eval(x), tol)
    }
}

/// `(1-x) log(1-x)` with its limit 0 at `x = 1`.
fn xlog(x: f64) -> f64 {
    let u = 1.0 - x;
    if u == 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

fn arccos_profile(m: u32) -> SingularityProfile {
    let g1 = (2.0 * m as f64).sqrt();
    let dg1 = g1 * (2.0 * m as f64 - 3.0) / 6.0;
    SingularityProfile::algebraic(0.5, 0.5, EndpointValues::new(g1, g1, dg1, -dg1))
        .expect("valid profile")
}

fn entry(
    id: &'static str,
    formula: &'static str,
    profile: SingularityProfile,
    reference: Reference,
    f: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> CorpusFunction {
    CorpusFunction {
        id,
        formula,
        integrand: Integrand::new(id, f).with_profile(profile),
        reference,
    }
}

pub fn corpus() -> Vec<CorpusFunction> {
    let exp_g = EndpointValues::new(E, 1.0 / E, E, 1.0 / E);
    let (c2, s2) = (2f64.cos(), 2f64.sin());
    let cos_g = EndpointValues::new(c2, 1.0, -s2, 0.0);
    let alg = |a, b, g| SingularityProfile::algebraic(a, b, g).expect("valid profile");
    let log = |a, b, g| SingularityProfile::algebraic_log(a, b, g).expect("valid profile");

    vec![
        entry(
            "F1a",
            "(1-x)^(1/2) e^x",
            alg(0.5, 0.0, exp_g),
            Reference::Oracle,
            |x: f64| (1.0 - x).sqrt() * x.exp(),
        ),
        entry(
            "F1b",
            "(1-x)^(3/4) (1+x)^(1/4) e^x",
            alg(0.75, 0.25, exp_g),
            Reference::Oracle,
            |x: f64| (1.0 - x).powf(0.75) * (1.0 + x).powf(0.25) * x.exp(),
        ),
        entry(
            "F2a",
            "(1-x) log(1-x) cos(x+1)",
            log(1.0, 0.0, cos_g),
            Reference::Oracle,
            |x: f64| xlog(x) * (x + 1.0).cos(),
        ),
        entry(
            "F2b",
            "(1-x) (1+x)^(1/2) log(1-x) cos(x+1)",
            log(1.0, 0.5, cos_g),
            Reference::Oracle,
            |x: f64| xlog(x) * (1.0 + x).sqrt() * (x + 1.0).cos(),
        ),
        entry(
            "F3a",
            "arccos(x^2)",
            arccos_profile(1),
            Reference::Oracle,
            |x: f64| (x * x).acos(),
        ),
        entry(
            "F3b",
            "arccos(x^6)",
            arccos_profile(3),
            Reference::Oracle,
            |x: f64| x.powi(6).acos(),
        ),
        entry(
            "S1",
            "(1-x)^(1/2)",
            alg(0.5, 0.0, EndpointValues::unit()),
            Reference::ClosedForm(4.0 * 2f64.sqrt() / 3.0),
            |x: f64| (1.0 - x).sqrt(),
        ),
        entry(
            "S2",
            "(1-x)^(3/4) (1+x)^(1/4)",
            alg(0.75, 0.25, EndpointValues::unit()),
            Reference::ClosedForm(4.0 * oracle::beta_fn(1.75, 1.25)),
            |x: f64| (1.0 - x).powf(0.75) * (1.0 + x).powf(0.25),
        ),
        entry(
            "S3",
            "(1-x) log(1-x)",
            log(1.0, 0.0, EndpointValues::unit()),
            Reference::ClosedForm(2.0 * 2f64.ln() - 1.0),
            xlog,
        ),
    ]
}

/// The entry with identifier `id` (case-insensitive).
pub fn find(id: &str) -> Result<CorpusFunction> {
    corpus()
        .into_iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| {
            let ids: Vec<_> = corpus().iter().map(|c| c.id).collect();
            Error::Config(format!(
                "unknown function `{id}`; known: {}",
                ids.join(", ")
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular::{classify_s, predict_coeff};
    use std::f64::consts::PI;

    #[test]
    fn ids_are_unique_and_findable() {
        let c = corpus();
        for f in &c {
            assert_eq!(find(f.id).unwrap().id, f.id);
        }
        assert_eq!(find("f2b").unwrap().id, "F2b");
        assert!(matches!(find("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn reference_profiles() {
        let p = *find("F1a").unwrap().profile();
        assert_eq!((p.alpha(), p.beta(), p.log_left()), (0.5, 0.0, false));
        assert_eq!(p.endpoint_values().g_at_1, E);
        assert_eq!(p.endpoint_values().g_at_minus1, 1.0 / E);

        let p = *find("F2b").unwrap().profile();
        assert_eq!((p.alpha(), p.beta(), p.log_left()), (1.0, 0.5, true));

        for f in corpus() {
            assert!(classify_s(f.profile()).is_ok(), "{}", f.id);
        }
    }

    #[test]
    fn arccos_leading_amplitude() {
        // a_{2n} of arccos(x^6) behaves like mu_0 / n^2 with mu_0 = -sqrt(6)/pi.
        let p = *find("F3b").unwrap().profile();
        let n = 500u64;
        let amp = predict_coeff(&p, 2 * n).unwrap() * (n * n) as f64;
        assert!((amp + 6f64.sqrt() / PI).abs() < 1e-12);
    }

    #[test]
    fn endpoints_are_finite() {
        for f in corpus() {
            for x in [-1.0, 1.0, 0.0] {
                assert!(f.integrand.eval(x).is_finite(), "{} at {x}", f.id);
            }
        }
    }

    #[test]
    fn endpoint_data_match_finite_differences() {
        // g = f / ((1-x)^a (1+x)^b [log(1-x)]) evaluated close to each endpoint.
        for f in corpus() {
            let p = *f.profile();
            let g = |x: f64| {
                let mut d = (1.0 - x).powf(p.alpha()) * (1.0 + x).powf(p.beta());
                if p.log_left() {
                    d *= (1.0 - x).ln();
                }
                f.integrand.eval(x) / d
            };
            let ev = p.endpoint_values();
            let h = 1e-5;
            let (g1, g2) = (g(1.0 - h), g(1.0 - 2.0 * h));
            let slope = (g1 - g2) / h;
            let extrap = g1 + slope * h;
            assert!((extrap - ev.g_at_1).abs() < 1e-4, "{}: g(1)", f.id);
            assert!((slope - ev.g_prime_at_1).abs() < 1e-3, "{}: g'(1)", f.id);
            let (g1, g2) = (g(-1.0 + h), g(-1.0 + 2.0 * h));
            let slope = (g2 - g1) / h;
            let extrap = g1 - slope * h;
            assert!((extrap - ev.g_at_minus1).abs() < 1e-4, "{}: g(-1)", f.id);
            assert!(
                (slope - ev.g_prime_at_minus1).abs() < 1e-3,
                "{}: g'(-1)",
                f.id
            );
        }
    }
}
