use super::{FieldPoly2, PuiseuxBranch};

/// Outcome of a valuation query at a given cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(usize),
    /// The polynomial vanishes identically on the branch (it is a multiple
    /// of the branch's implicit equation); detected exactly, since the
    /// substitution is a finite polynomial computation.
    Infinite,
    /// The order is finite but larger than the requested cap; reported
    /// explicitly instead of silently returning a number the caller said
    /// it would not trust.
    ExceedsCap(usize),
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// `ord_tau f(x(tau), y(tau))`, exactly.
pub fn valuation_of(f: &FieldPoly2, b: &PuiseuxBranch, cap: usize) -> Valuation {
    let substituted = f.eval_tau(&b.x_tau(), &b.y_tau(), Clone::clone);
    match substituted.ord() {
        None => Valuation::Infinite,
        Some(v) if v <= cap => Valuation::Finite(v),
        Some(_) => Valuation::ExceedsCap(cap),
    }
}
