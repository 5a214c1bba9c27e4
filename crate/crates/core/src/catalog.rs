//! Built-in algebras and solution families, stored in the file grammar.

use std::collections::HashMap;

use crate::coeff::{Assignment, ParamPoly, RatFunc, Sym};
use crate::error::{Error, Result};
use crate::freealg::NCPoly;
use crate::relations::RelationSet;
use crate::syntax::{parse_algebra, parse_expr, Scope};

/// What the test suite checks about an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedPbw {
    /// PBW identically in the parameters, under the exclusions.
    Pbw,
    /// Constraints remain on the parameters.
    Constrained,
    /// Resolving the overlap does not terminate within the cap.
    Diverges,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
    /// Parameter expressions that must not vanish.
    pub exclusions: &'static [&'static str],
    pub form: Option<&'static str>,
    pub pbw: ExpectedPbw,
    /// Degree of the lowest Casimir, when the entry records one.
    pub casimir: ExpectedCasimir,
    pub printed_casimir: Option<&'static str>,
    /// The display as printed, when it differs from `source`.
    pub printed_source: Option<&'static str>,
    /// Coefficient symbols in the printed Casimir whose values are solved for.
    pub casimir_unknowns: &'static [&'static str],
}

const GENERAL_QUADRATIC: &str = "\
generators: A B C
params: a200 a110 a100 a010 a001 b200 b110 b101 b020 b100 b010 b001 c200 c110 c101 c020 c011 c100 c010 c001
rel: [B,A] = a200*A^2 + a110*A*B + a100*A + a010*B + a001*C
rel: [C,A] = b200*A^2 + b110*A*B + b101*A*C + b020*B^2 + b100*A + b010*B + b001*C
rel: [C,B] = c200*A^2 + c110*A*B + c101*A*C + c020*B^2 + c011*B*C + c100*A + c010*B + c001*C
";

const GENERAL_CUBIC: &str = "\
generators: A B C
params: a300 a200 a100 a010 a001 b300 b210 b120 b030 b200 b110 b020 b100 b010 b001 c300 c210 c120 c030 c200 c110 c101 c020 c100 c010 c001
mode: permissive cap=10000
rel: [B,A] = a300*A^3 + a200*A^2 + a100*A + a010*B + a001*C
rel: [C,A] = b300*A^3 + b210*A^2*B + b120*A*B^2 + b030*B^3 + b200*A^2 + b110*A*B + b020*B^2 + b100*A + b010*B + b001*C
rel: [C,B] = c300*A^3 + c210*A^2*B + c120*A*B^2 + c030*B^3 + c200*A^2 + c110*A*B + c101*A*C + c020*B^2 + c100*A + c010*B + c001*C
";

const DASKALOYANNIS: &str = "\
# [A,B] = C, [A,C] = alpha A^2 + beta {A,B} + ..., [B,C] = nu A^2 - alpha {A,B} - ...
# written in the [higher,lower] orientation with {A,B} = 2*A*B - C
generators: A B C
params: alpha beta gamma delta epsilon nu xi zeta
rel: [B,A] = -C
rel: [C,A] = -alpha*A^2 - 2*beta*A*B + beta*C - gamma*A - delta*B - epsilon
rel: [C,B] = -nu*A^2 + 2*alpha*A*B - alpha*C + beta*B^2 - xi*A + gamma*B - zeta
";

const DASKALOYANNIS_CASIMIR: &str = "C^2 - alpha*{A^2,B} - beta*{A,B^2} + (alpha*beta - gamma)*{A,B} + (beta^2 - delta)*B^2 \
+ (beta*gamma - 2*epsilon)*B + kappa*A^3 + (xi + nu*beta/3 + alpha^2)*A^2 + (nu*delta/3 + alpha*gamma + 2*zeta)*A";

const RACAH: &str = "\
generators: A B C
params: alpha beta gamma delta epsilon xi zeta
rel: [B,A] = -C
rel: [C,A] = -alpha*A^2 - 2*beta*A*B + beta*C - gamma*A - delta*B - epsilon
rel: [C,B] = 2*alpha*A*B - alpha*C + beta*B^2 - xi*A + gamma*B - zeta
";

const DASKALOYANNIS_CUBIC: &str = "\
generators: A B C
degrees: A=1 B=2 C=2
params: alpha beta gamma delta epsilon mu nu xi zeta
rel: [B,A] = C
rel: [C,A] = alpha*A^2 + 2*beta*A*B + gamma*A + delta*B + beta*C + epsilon
rel: [C,B] = mu*A^3 + nu*A^2 - 2*alpha*A*B - beta*B^2 + xi*A - gamma*B - alpha*C + zeta
";

const CALABI_YAU_OMEGA: &str = "\
generators: A B C
degrees: A=2 B=3 C=4
params: omega
rel: [B,A] = C
rel: [C,A] = A^2 + 2*A*B + omega*B^2 + A + B + C
rel: [C,B] = A^3 + A^2 - 2*A*B - B^2 + A - B - C
";

const CALABI_YAU_OMEGA_PRINTED: &str = "\
generators: A B C
degrees: A=2 B=3 C=4
params: omega
rel: [B,A] = C
rel: [C,A] = A^2 + 2*A*B + omega*B^2 + A + B + C
rel: [C,B] = A^3 + A^2 - 2*A*B - (1 - omega)*B^2 + A + B - C
";

const RHO_SIGMA_OMEGA: &str = "\
generators: A B C
degrees: A=2 B=3 C=4
params: rho sigma omega
rel: [B,A] = rho*A^2 + C
rel: [C,A] = sigma*A^3 + A^2 + 2*A*B + omega*B^2 + A + B + C
rel: [C,B] = A^3 - 3*sigma*A^2*B + A^2 + (4*rho - 2*sigma - 2)*A*B + (2*rho - 3*sigma)*A*C + (omega*rho - omega*sigma - 1)*B^2 + A + (rho - sigma - 1)*B + (2*rho - sigma - 1)*C
";

const RHO_SIGMA_OMEGA_PRINTED: &str = "\
generators: A B C
params: rho sigma omega
mode: permissive cap=10000
rel: [B,A] = rho*A^2 + C
rel: [C,A] = sigma*A^3 + A^2 + 2*A*B + omega*B^2 + A + B + C
rel: [C,B] = A^3 - 3*sigma*A^2*C + A^2 - 2*A*B + (2*rho - 3*sigma)*A*C - (1 + sigma*omega - omega)*B^2 + A + (1 - sigma)*B - C
";

const CUBIC_QUARTIC: &str = "\
generators: A B C
degrees: A=2 B=3 C=4
params: a200 b300 b200 b100 b020 b010 b001 c300 c200 c100
rel: [B,A] = C + a200*A^2
rel: [C,A] = b300*A^3 + b200*A^2 + 2*b001*A*B + b100*A + b020*B^2 + b010*B + b001*C
rel: [C,B] = c300*A^3 - 3*b300*A^2*B + c200*A^2 - 2*(b300*b001 - 2*b001*a200 + b200)*A*B + (2*a200 - 3*b300)*A*C + (-b001 + a200*b020 - b020*b300)*B^2 + c100*A + (-b300*b010 + a200*b010 - b100)*B + (-b300*b001 + 2*a200*b001 - b200)*C
";

const CUBIC_QUARTIC_CASIMIR: &str = "3*c300*A^4 - 12*b300*A^3*B + (4*c200 + (3*b020*(4*a200 - 3*b300) - 2*b001)*c300)*A^3 \
+ 6*(-2*b200 + 4*a200*(b001 - b020*b300) + b020*(6*b300^2 + c300))*A^2*B \
+ 6*(2*a200 - 3*b300)*A^2*C + 12*(b020*(a200 - 2*b300) - b001)*A*B^2 - 4*b020*B^3 \
+ (-c300*b001^2 - (4*c200 + a200*b020*c300)*b001 + 6*c100 + 8*a200*b020*c200 - 12*b020*b300*c200 + 3*b010*c300 + 3*b020*b200*c300)*A^2 \
+ 2*(12*b001*b020*a200^2 - 6*(2*b001^2 + 5*b020*b300*b001 - b010 + b020*b200)*a200 + 12*b001*b020*b300^2 - 6*b100 + 6*b001*b200 + 6*b001^2*b300 - 9*b010*b300 + 12*b020*b200*b300 + 2*b020*c200 + 2*b001*b020*c300)*A*B \
+ 6*(2*b020*a200^2 + (2*b001 - 7*b020*b300)*a200 + 6*b020*b300^2 - 2*b200 + b001*b300 + b020*c300)*A*C \
+ 2*(6*b001^2 - 2*b020*(a200 - 4*b300)*b001 - 3*b010 + b020*(4*b020*a200^2 - 10*b020*b300*a200 - 4*b200 + b020*(6*b300^2 + c300)))*B^2 \
+ 6*(b020*(2*a200 - 3*b300) - 2*b001)*B*C + 6*C^2 \
+ (6*a200*b020*c100 - 12*b020*b300*c100 + 2*b010*c200 + 3*b020*b100*c300 - b001*(6*c100 + b010*c300))*A \
+ 2*(4*b010*b020*a200^2 - 2*b020*(2*b100 + 5*b010*b300)*a200 + 6*b010*b020*b300^2 - 3*b010*b200 + 6*b020*b100*b300 + 3*b001*(2*b100 + b010*b300) + b020*c100 + b010*b020*c300)*B \
+ 2*(6*b001*b020*a200^2 - 3*(2*b001^2 + 5*b020*b300*b001 - b010 + b020*b200)*a200 + 6*b001*b020*b300^2 - 3*b100 + 3*b001*b200 + 3*b001^2*b300 - 3*b010*b300 + 6*b020*b200*b300 + b020*c200 + b001*b020*c300)*C";

const FORM_1A_CASIMIR: &str = "\
generators: A B C
params: lambda alpha beta gamma delta epsilon zeta eta
rel: [B,A] = C + lambda*A*B
rel: [C,A] = alpha*A^2 - (lambda + 2)/(lambda + 1)*beta*A*B - lambda/(lambda + 1)*A*C + gamma*B^2 - 1/(lambda + 1)*delta*A + epsilon*B - 1/(lambda + 1)*beta*C
rel: [C,B] = zeta*A^2 - (lambda + 1)*(lambda + 2)*alpha*A*B + beta*B^2 + lambda*B*C + eta*A + delta*B - (lambda + 1)*alpha*C
";

const FORM_1A_CASIMIR_PRINTED: &str = "\
generators: A B C
params: lambda alpha beta gamma delta epsilon zeta eta
rel: [B,A] = C + lambda*A*B
rel: [C,A] = alpha*A^2 - (lambda + 2)/(lambda + 1)*beta*A*B - lambda/(lambda + 1)*A*C + gamma*B^2 + 1/(lambda + 1)*delta*A + epsilon*B - 1/(lambda + 1)*beta*C
rel: [C,B] = zeta*A^2 - (lambda + 1)*(lambda + 2)*alpha*A*B + beta*B^2 + lambda*B*C + eta*A + delta*B - (lambda + 1)*alpha*C
";

const FORM_1A_CASIMIR_K: &str = "\
-(beta*eta*lambda^2 + 3*beta*eta*lambda + 3*beta*eta + zeta*lambda*epsilon + zeta*epsilon)*(lambda + 1)*A \
- (-alpha*lambda^4*epsilon - 5*alpha*lambda^3*epsilon - 10*alpha*lambda^2*epsilon - 9*alpha*lambda*epsilon - 3*alpha*epsilon + beta*delta*lambda^3 \
+ 5*beta*delta*lambda^2 + 9*beta*delta*lambda + 6*beta*delta + gamma*eta*lambda^2 + 2*gamma*eta*lambda + gamma*eta)*B \
+ gamma*(lambda + 1)*(lambda + 2)*B^3 \
- (-alpha*beta*lambda^3 - 4*alpha*beta*lambda^2 - 6*alpha*beta*lambda - 3*alpha*beta + gamma*zeta*lambda + gamma*zeta + delta*lambda^2 + 3*delta*lambda + 3*delta)*(lambda + 1)*C \
- (beta*zeta*lambda^2 + 3*beta*zeta*lambda + 2*beta*zeta + eta*lambda^3 + 4*eta*lambda^2 + 6*eta*lambda + 3*eta)*(lambda + 1)*A^2 \
- (lambda + 1)*(lambda + 2)*(-alpha*beta*lambda^3 - 4*alpha*beta*lambda^2 - 6*alpha*beta*lambda - 3*alpha*beta + gamma*zeta*lambda + gamma*zeta + delta*lambda^2 + 3*delta*lambda + 3*delta)*A*B \
- (-alpha*lambda^3 - 4*alpha*lambda^2 - 6*alpha*lambda - 3*alpha)*(lambda + 1)*(lambda + 2)*A*C \
- (-alpha*gamma*lambda^4 - 6*alpha*gamma*lambda^3 - 13*alpha*gamma*lambda^2 - 12*alpha*gamma*lambda - 4*alpha*gamma + beta^2*lambda^3 \
+ 5*beta^2*lambda^2 + 9*beta^2*lambda + 6*beta^2 - lambda^3*epsilon - 4*lambda^2*epsilon - 6*lambda*epsilon - 3*epsilon)*B^2 \
- beta*(lambda^2 + 3*lambda + 3)*(lambda + 1)*(lambda + 2)*B*C - (lambda^2 + 3*lambda + 3)*(lambda + 1)^2*C^2 \
+ alpha*(lambda^2 + 3*lambda + 3)*(lambda + 1)^3*(lambda + 2)*A^2*B \
- (beta*lambda^2 + 3*beta*lambda + 3*beta)*(lambda + 1)*(lambda + 2)*A*B^2 \
- (lambda^3 + 3*lambda^2 + 3*lambda)*(lambda + 1)*(lambda + 2)*A*B*C - zeta*(lambda + 1)^3*(lambda + 2)*A^3";

const FORM_1A_NOCAS_NONZERO: &str = "\
generators: A B C
params: lambda alpha
rel: [B,A] = lambda*A*B + C
rel: [C,A] = lambda*A*C - (1 + lambda)^2*alpha^2/lambda^2*B + 2*alpha*(1 + lambda)/lambda*C
rel: [C,B] = alpha*B^2 - lambda/(1 + lambda)*B*C
";

const FORM_1A_NOCAS_NONZERO_PRINTED: &str = "\
generators: A B C
params: lambda alpha
rel: [B,A] = lambda*A*B + C
rel: [C,A] = lambda*A*C - (1 + lambda)^2*alpha/lambda^2*B + 2*alpha*(1 + lambda)/lambda*C
rel: [C,B] = alpha*B^2 - lambda/(1 + lambda)*B*C
";

const FORM_1A_NOCAS_ZERO: &str = "\
generators: A B C
params: alpha beta gamma
rel: [B,A] = C
rel: [C,A] = -alpha/(1 + alpha)*A*C + beta*A
rel: [C,B] = gamma*A*C + alpha*B*C - (1 + alpha)*beta*gamma/alpha*A - (1 + alpha)*beta*B
";

const FORM_1A_MINUS_ONE: &str = "\
generators: A B C
params: alpha beta gamma delta zeta
rel: [B,A] = -A*B + C
rel: [C,A] = alpha*A^2 + beta*A*B - gamma/(1 + gamma)*A*C + alpha*beta*(1 + gamma)*A + zeta*B + (zeta - beta^2*(1 + gamma)^2)/(beta*(1 + gamma))*C
rel: [C,B] = (-alpha - delta - alpha*gamma)/(1 + gamma)*A*B - zeta/beta*B^2 + gamma*B*C - alpha*(alpha + delta + alpha*gamma)*A - zeta*(alpha + delta + alpha*gamma)/(beta*(1 + gamma))*B + delta*C
";

const FORM_1A_MINUS_ONE_PRINTED: &str = "\
generators: A B C
params: alpha beta gamma delta epsilon zeta
rel: [B,A] = -A*B + C
rel: [C,A] = alpha*A^2 + beta*A*B - gamma/(1 + gamma)*A*C + alpha*beta*(1 + gamma)*A
rel: [C,B] = (-alpha - delta - alpha*gamma)/(1 + gamma)*A*B + epsilon*B^2 + gamma*B*C - alpha*(alpha + delta + alpha*gamma)*A - zeta*(alpha + delta + alpha*gamma)/(beta*(1 + gamma))*B + delta*C
";

const FORM_1B: &str = "\
generators: A B C
params: alpha beta gamma delta epsilon zeta eta
rel: [B,A] = A^2 + C
rel: [C,A] = alpha*A^2 + beta*A*B + gamma*B^2 + delta*A + epsilon*B + beta/2*C
rel: [C,B] = zeta*A^2 + 2*(beta - alpha)*A*B + 2*A*C + (2*gamma - beta)/2*B^2 + eta*A + (epsilon - delta)*B + (beta - alpha)*C
";

const FORM_1B_K: &str = "\
-1/6*(3*beta*eta - 6*gamma*eta - 2*zeta*epsilon)*A - 1/3*(3*alpha*epsilon - 3*beta*delta + 4*gamma*delta - gamma*eta - 4*gamma*epsilon)*B \
- 1/6*(-3*alpha*beta + 6*alpha*gamma + 3*beta^2 - 6*beta*gamma - 2*gamma*zeta + 6*delta - 6*epsilon)*C \
- 1/3*(beta*zeta - 4*gamma*zeta - 3*eta)*A^2 - 1/3*(-3*alpha*beta + 6*alpha*gamma + 3*beta^2 - 6*beta*gamma - 2*gamma*zeta + 6*delta - 6*epsilon)*A*B \
- 1/6*(8*alpha*gamma - 3*beta^2 + 2*beta*gamma - 8*gamma^2 + 6*epsilon)*B^2 - (beta - 2*gamma)*B*C + C^2 \
+ 2*(beta - alpha)*A^2*B - (beta - 2*gamma)*A*B^2 - (2*alpha - beta - 2*gamma)*A*C + 2*A^2*C + 2/3*A^3*zeta - 2/3*gamma*B^3";

const FORM_2D: &str = "\
generators: A B C
params: lambda alpha beta gamma delta epsilon zeta
rel: [B,A] = lambda*A*B + A + B
rel: [C,A] = alpha*A^2 - (2 + lambda)/(1 + lambda)*beta*A*B - lambda/(1 + lambda)*A*C + gamma*A + delta*B - 1/(1 + lambda)*C
rel: [C,B] = epsilon*A^2 - (lambda + 1)*(lambda + 2)*alpha*A*B + beta*B^2 + lambda*B*C + zeta*A - ((lambda + 1)*(gamma + alpha) + beta)*B + C
";

const FORM_2D_PRINTED: &str = "\
generators: A B C
params: lambda alpha beta gamma delta epsilon zeta
rel: [B,A] = lambda*A*B + A + B
rel: [C,A] = alpha*A^2 - (2*beta + lambda)/(1 + lambda)*beta*A*B - lambda/(1 + lambda)*A*C + gamma*A + delta*B - 1/(1 + lambda)*C
rel: [C,B] = epsilon*A^2 - (lambda + 1)*(lambda + 2)*alpha*A*B + beta*B^2 + lambda*B*C + zeta*A - ((lambda + 1)*(gamma + alpha) + beta)*B + C
";

const FORM_2D_K: &str = "\
(zeta*lambda^2 + 3*zeta*lambda + 3*zeta + epsilon)*(lambda + 1)*A \
- (lambda^2 + 3*lambda + 3)*((alpha + gamma)*(lambda + 1)*(lambda + 2) + (beta*lambda + 2*beta - delta*lambda - delta))*B \
- (-zeta*lambda^2 - 3*zeta*lambda - 3*zeta - lambda*epsilon - 3*epsilon)*(lambda + 1)^2*A^2 \
- (lambda^2 + 3*lambda + 3)*(2*alpha*lambda + 2*alpha + beta + gamma*lambda + gamma)*(lambda + 1)*(lambda + 2)*A*B \
- (-lambda^2 - 3*lambda - 3)*(lambda + 1)*(lambda + 2)*A*C - (lambda^2 + 3*lambda + 3)*(beta*(-lambda) - 2*beta + delta*lambda + delta)*B^2 \
- (-lambda^2 - 3*lambda - 3)*(lambda + 1)*(lambda + 2)*B*C \
+ epsilon*(lambda + 1)^3*(lambda + 2)*A^3 - alpha*(lambda^2 + 3*lambda + 3)*(lambda + 1)^3*(lambda + 2)*A^2*B \
+ beta*(lambda^2 + 3*lambda + 3)*(lambda + 1)*(lambda + 2)*A*B^2 + lambda*(lambda^2 + 3*lambda + 3)*(lambda + 1)*(lambda + 2)*A*B*C";

const CENTRAL_EXTENSION: &str = "\
# skew -1 base solution with central terms c1, c2, c3; c2 and c3 in closed form
generators: A B C
params: b200 b110 b010 c011 c001 c1
rel: [B,A] = -A*B + C + c1
rel: [C,A] = b200*A^2 + b110*A*B - c011/(1 + c011)*A*C + b110*b200*(1 + c011)*A + b010*B + (b010/(b110*(1 + c011)) - b110*(1 + c011))*C - c1*(b110^2*c011 + b110^2 - b010)/(b110*(1 + c011))
rel: [C,B] = (-b200 - c001/(1 + c011))*A*B - b010/b110*B^2 + c011*B*C - b200*(b200*(1 + c011) + c001)*A - b010*(b200*(1 + c011) + c001)/(b110*(1 + c011))*B + c001*C + c1*(c001/(1 + c011) - b200*c011)
";

/// What the test suite checks about an entry's Casimirs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedCasimir {
    /// Lowest degree with a nonzero Casimir.
    Degree(usize),
    /// No Casimir up to the given degree.
    NoneUpTo(usize),
    NotRecorded,
}

macro_rules! entry {
    ($id:expr, $summary:expr, $src:expr, $excl:expr, $form:expr, $pbw:expr, $cas:expr, $printed:expr, $unknowns:expr) => {
        entry!($id, $summary, $src, $excl, $form, $pbw, $cas, $printed, $unknowns, None)
    };
    ($id:expr, $summary:expr, $src:expr, $excl:expr, $form:expr, $pbw:expr, $cas:expr, $printed:expr, $unknowns:expr, $as_printed:expr) => {
        CatalogEntry {
            id: $id,
            summary: $summary,
            source: $src,
            exclusions: $excl,
            form: $form,
            pbw: $pbw,
            casimir: $cas,
            printed_casimir: $printed,
            casimir_unknowns: $unknowns,
            printed_source: $as_printed,
        }
    };
}

use ExpectedCasimir::*;
use ExpectedPbw::*;

static ENTRIES: &[CatalogEntry] = &[
    entry!("daskaloyannis", "quadratic Daskaloyannis algebra", DASKALOYANNIS, &[], Some("1a"), Pbw, Degree(3), Some(DASKALOYANNIS_CASIMIR), &["kappa"]),
    entry!("racah", "quadratic Racah algebra (daskaloyannis at nu = 0)", RACAH, &[], Some("1a"), Pbw, Degree(3), None, &[]),
    entry!("daskaloyannis-cubic", "cubic extension of the Daskaloyannis algebra", DASKALOYANNIS_CUBIC, &[], None, Pbw, Degree(4), None, &[]),
    entry!("general-cubic", "general three-generator cubic commutator algebra", GENERAL_CUBIC, &[], None, Diverges, NotRecorded, None, &[]),
    entry!("general-quadratic", "general three-generator quadratic commutator algebra", GENERAL_QUADRATIC, &[], None, Constrained, NotRecorded, None, &[]),
    entry!("calabi-yau-omega", "Calabi-Yau type cubic family in omega", CALABI_YAU_OMEGA, &[], None, Pbw, Degree(4), None, &[], Some(CALABI_YAU_OMEGA_PRINTED)),
    entry!("rho-sigma-omega", "cubic family with A^2 in [B,A]", RHO_SIGMA_OMEGA, &[], None, Pbw, Degree(4), None, &[], Some(RHO_SIGMA_OMEGA_PRINTED)),
    entry!("cubic-parametric-quartic-casimir", "parametric cubic family with a quartic Casimir", CUBIC_QUARTIC, &[], None, Pbw, Degree(4), Some(CUBIC_QUARTIC_CASIMIR), &[]),
    entry!("form-1a-casimir", "form 1a solution with a cubic Casimir", FORM_1A_CASIMIR, &["lambda + 1"], Some("1a"), Pbw, Degree(3), Some(FORM_1A_CASIMIR_K), &[], Some(FORM_1A_CASIMIR_PRINTED)),
    entry!("form-1a-nocasimir-lambda-nonzero", "form 1a solution without a Casimir, lambda != 0", FORM_1A_NOCAS_NONZERO, &["lambda", "lambda + 1"], Some("1a"), Pbw, NoneUpTo(3), None, &[], Some(FORM_1A_NOCAS_NONZERO_PRINTED)),
    entry!("form-1a-nocasimir-lambda-zero", "form 1a solution without a Casimir, lambda = 0", FORM_1A_NOCAS_ZERO, &["alpha", "alpha + 1"], Some("1a"), Pbw, NoneUpTo(3), None, &[]),
    entry!("form-1a-lambda-minus-one", "form 1a solution at lambda = -1", FORM_1A_MINUS_ONE, &["gamma + 1", "beta"], Some("1a"), Pbw, NoneUpTo(3), None, &[], Some(FORM_1A_MINUS_ONE_PRINTED)),
    entry!("form-1b", "form 1b solution at lambda = 0 with a cubic Casimir", FORM_1B, &[], Some("1b"), Pbw, Degree(3), Some(FORM_1B_K), &[]),
    entry!("form-2d", "form 2d solution with a cubic Casimir", FORM_2D, &["lambda + 1"], Some("2d"), Pbw, Degree(3), Some(FORM_2D_K), &[], Some(FORM_2D_PRINTED)),
    entry!("central-extension", "form 1a at lambda = -1 with central terms", CENTRAL_EXTENSION, &["b110", "c011 + 1"], Some("1a"), Pbw, NoneUpTo(3), None, &[]),
];

/// All entries in a fixed order.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// `(identifier, summary)` pairs.
pub fn list_entries() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.id, e.summary)).collect()
}

fn normalize_id(id: &str) -> String {
    id.replace('λ', "lambda")
        .replace("≠0", "-nonzero")
        .replace("=0", "-zero")
        .replace("=−1", "-minus-one")
        .replace("=-1", "-minus-one")
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    let key = normalize_id(id);
    ENTRIES
        .iter()
        .find(|e| e.id == key)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

impl CatalogEntry {
    /// The relations with all parameters symbolic.
    pub fn relations(&self) -> RelationSet {
        parse_algebra(self.source).expect("catalog sources parse")
    }

    pub fn exclusion_polys(&self) -> Vec<ParamPoly> {
        let r = self.relations();
        self.exclusions
            .iter()
            .map(|src| {
                let scope = Scope {
                    generators: r.generators(),
                    params: r.params(),
                    brackets: false,
                };
                let p = parse_expr(src, &scope).expect("catalog exclusions parse");
                p.coefficient(&crate::freealg::Word::unit())
                    .as_poly()
                    .cloned()
                    .expect("exclusions are polynomials")
            })
            .collect()
    }

    /// Relations with `assignment` substituted; unassigned parameters stay
    /// symbolic.
    pub fn instantiate(&self, assignment: &Assignment) -> Result<RelationSet> {
        let r = self.relations();
        for (src, p) in self.exclusions.iter().zip(self.exclusion_polys()) {
            if p.substitute(assignment).is_zero() {
                return Err(Error::ExclusionViolated(src.to_string()));
            }
        }
        r.specialize(assignment)
    }

    /// The printed Casimir with anticommutators expanded and the result
    /// reduced to ordered words. Unknown coefficient symbols stay symbolic.
    pub fn printed_casimir_raw(&self) -> Result<Option<NCPoly>> {
        let Some(src) = self.printed_casimir else { return Ok(None) };
        let r = self.relations();
        let mut params: Vec<Sym> = r.params().to_vec();
        params.extend(self.casimir_unknowns.iter().map(|s| Sym::new(s)));
        let scope = Scope {
            generators: r.generators(),
            params: &params,
            brackets: true,
        };
        let k = parse_expr(src, &scope)?;
        let red = crate::relations::Reducer::symbolic(&r);
        Ok(Some(red.reduce(&k, crate::relations::Strategy::Leftmost)?))
    }
}

pub fn instantiate(id: &str, assignment: &Assignment) -> Result<RelationSet> {
    entry(id)?.instantiate(assignment)
}

/// The printed Casimir of an entry in PBW form, with unknown coefficients
/// replaced by the values that make it central. Also returns those values.
pub fn resolve_printed_casimir(id: &str) -> Result<(NCPoly, Vec<(Sym, RatFunc)>)> {
    let e = entry(id)?;
    let k = e.printed_casimir_raw()?.ok_or_else(|| Error::NoPrintedCasimir(id.to_string()))?;
    if e.casimir_unknowns.is_empty() {
        return Ok((k, vec![]));
    }
    let unknowns: Vec<Sym> = e.casimir_unknowns.iter().map(|s| Sym::new(s)).collect();
    let (solved, values) = crate::casimir::solve_unknown_coefficients(&k, &e.relations(), &unknowns)?;
    Ok((solved, values.into_iter().collect()))
}

/// Substitution images used when composing entries.
pub fn images(pairs: &[(&str, RatFunc)]) -> HashMap<Sym, RatFunc> {
    pairs.iter().map(|(s, v)| (Sym::new(s), v.clone())).collect()
}
