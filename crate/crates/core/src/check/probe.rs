//! Sampled check of how the outer scalar of a derivation depends on one
//! scalar of the term.

use std::fmt;

use thiserror::Error;

use super::{infer_scalar, Context, TypeError};
use crate::scalar::Scalar;
use crate::syntax::{parse_term_with_hole, ParseError, Scope};
use crate::term::Term;

type Builder = Box<dyn Fn(&Scalar) -> Term + Send + Sync>;

/// A term with one scalar hole.
pub struct ScalarTemplate {
    build: Builder,
    description: String,
}

impl ScalarTemplate {
    pub fn new(description: impl Into<String>, build: impl Fn(&Scalar) -> Term + Send + Sync + 'static) -> Self {
        ScalarTemplate { build: Box::new(build), description: description.into() }
    }

    /// A template written in term syntax with `?` for the hole.
    pub fn parse(src: &str, scope: &Scope) -> Result<Self, ParseError> {
        parse_term_with_hole(src, scope, &Scalar::one())?;
        let (src, scope) = (src.to_string(), scope.clone());
        Ok(ScalarTemplate::new(src.clone(), move |a| {
            parse_term_with_hole(&src, &scope, a).expect("template parsed once already")
        }))
    }

    pub fn instantiate(&self, a: &Scalar) -> Term {
        (self.build)(a)
    }
}

impl fmt::Display for ScalarTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

impl fmt::Debug for ScalarTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarTemplate({})", self.description)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("need at least 4 distinct samples, got {0}")]
    TooFewSamples(usize),
    #[error("template is ill-typed at {sample}: {error}")]
    TemplateIllTyped { sample: Scalar, error: Box<TypeError> },
}

/// Degree of the polynomial interpolating the outer canonical scalar of the
/// template's type over the sample points.
pub fn probe_scalar_linearity(
    template: &ScalarTemplate,
    ctx: &Context,
    samples: &[Scalar],
) -> Result<usize, ProbeError> {
    let mut xs = samples.to_vec();
    xs.sort();
    xs.dedup();
    if xs.len() < 4 {
        return Err(ProbeError::TooFewSamples(xs.len()));
    }
    let mut points = Vec::with_capacity(xs.len());
    for x in xs {
        let t = template.instantiate(&x);
        let (c, _) = infer_scalar(ctx, &t).map_err(|error| ProbeError::TemplateIllTyped { sample: x.clone(), error: Box::new(error) })?;
        points.push((x, c.scalar()));
    }
    Ok(interpolation_degree(&points))
}

/// Degree of the interpolating polynomial through points with distinct
/// abscissae, from Newton divided differences. The zero polynomial has
/// degree 0.
pub fn interpolation_degree(points: &[(Scalar, Scalar)]) -> usize {
    let mut table: Vec<Scalar> = points.iter().map(|(_, y)| y.clone()).collect();
    let mut degree = 0;
    for k in 1..points.len() {
        for i in (k..points.len()).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &points[i].0 - &points[i - k].0;
            table[i] = &num / &den;
        }
        if !table[k].is_zero() {
            degree = k;
        }
    }
    degree
}
