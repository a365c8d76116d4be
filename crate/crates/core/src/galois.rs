//! Galois-orbit analysis of a branch: conjugate branches modulo
//! reparametrization, the splitting tower with its multiplicities `ell_j`
//! and degrees, and assembly of the combinatorial graph data consumed by
//! the product formulas.
//!
//! Invariants:
//! * orbit members are pairwise distinct as branches (identity modulo
//!   `tau -> zeta*tau` is decided abstractly, without adjoining roots of
//!   unity),
//! * every M value is an orbit sum over *distinct conjugate vertices*: the
//!   intersection of the representative with one curvette per conjugate
//!   vertex, where the vertex of a conjugate coincides with the original
//!   one exactly when the contact order of the two branches is at least
//!   the vertex depth,
//! * tower multiplicativity `deg_{j+1} = deg_j * ell_j` holds on every
//!   constructed `GResolutionData`, with `deg_1 = 1` and each `ell_j >= 2`,
//! * splitting M values are certified by recomputation with a second
//!   generic coefficient.

use std::collections::BTreeMap;

use crate::branch::{
    char_data, contact_order, curvette_at, intersection_multiplicity, separation_exponent,
    PuiseuxBranch, Vertex,
};
use crate::error::{Error, Result};
use crate::Rat;

/// One splitting point of the tower: its orbit-summed m-value, the local
/// degree `ell_j = [K_j : K_{j-1}] >= 2`, and `deg_j = [K_{j-1} : K_0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub m_rho: usize,
    pub ell: usize,
    pub deg: usize,
}

/// Divisorial datum: the M value of the chosen trunk vertex and
/// `deg_s = [K_s : K_0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisorial {
    pub m_delta: usize,
    pub deg_s: usize,
}

/// Combinatorial data of the quotient resolution graph: everything the
/// closed-form product formulas consume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GResolutionData {
    pub g: usize,
    /// `M_sigma[i]`, `0 <= i <= g`.
    pub m_sigma: Vec<usize>,
    /// `M_tau[i-1]` for `1 <= i <= g`.
    pub m_tau: Vec<usize>,
    /// Splittings in trunk order.
    pub splittings: Vec<Splitting>,
    pub divisorial: Option<Divisorial>,
}

impl GResolutionData {
    /// `[K_s : K_0]`, the degree after the whole tower.
    pub fn deg_s(&self) -> usize {
        self.splittings.last().map_or(1, |s| s.deg * s.ell)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_sigma.len() != self.g + 1 {
            return Err(Error::GraphValidation(format!(
                "expected {} M_sigma values for g = {}, got {}",
                self.g + 1,
                self.g,
                self.m_sigma.len()
            )));
        }
        if self.m_tau.len() != self.g {
            return Err(Error::GraphValidation(format!(
                "expected {} M_tau values for g = {}, got {}",
                self.g,
                self.g,
                self.m_tau.len()
            )));
        }
        if self.m_sigma.iter().chain(&self.m_tau).any(|&v| v == 0) {
            return Err(Error::GraphValidation("M values must be positive".into()));
        }
        let mut deg = 1;
        let mut prev_rho = 0;
        for (j, s) in self.splittings.iter().enumerate() {
            if s.m_rho == 0 {
                return Err(Error::GraphValidation("M_rho must be positive".into()));
            }
            if s.ell < 2 {
                return Err(Error::GraphValidation(format!(
                    "splitting #{j} has ell = {}, must be >= 2",
                    s.ell
                )));
            }
            if s.deg != deg {
                return Err(Error::GraphValidation(format!(
                    "splitting #{j} has deg = {}, tower multiplicativity requires {deg}",
                    s.deg
                )));
            }
            if s.m_rho < prev_rho {
                return Err(Error::GraphValidation(
                    "splitting M values must be non-decreasing along the trunk".into(),
                ));
            }
            prev_rho = s.m_rho;
            deg *= s.ell;
        }
        if let Some(d) = &self.divisorial {
            if d.m_delta == 0 {
                return Err(Error::GraphValidation("M_delta must be positive".into()));
            }
            if d.deg_s != deg {
                return Err(Error::GraphValidation(format!(
                    "divisorial deg_s = {}, tower multiplicativity requires {deg}",
                    d.deg_s
                )));
            }
        }
        Ok(())
    }
}

/// Galois orbit of a branch under the coefficientwise automorphism action.
#[derive(Clone, Debug)]
pub struct BranchOrbit {
    pub representative: PuiseuxBranch,
    /// Pairwise distinct as branches; contains the representative.
    pub members: Vec<PuiseuxBranch>,
    /// For each member, one automorphism index mapping the representative
    /// onto it.
    pub witnesses: Vec<usize>,
    pub stabilizer_size: usize,
}

fn same_branch(a: &PuiseuxBranch, b: &PuiseuxBranch) -> Result<bool> {
    if a.m() != b.m() {
        return Ok(false);
    }
    Ok(separation_exponent(a, b)?.is_none())
}

/// Apply every automorphism coefficientwise and quotient by branch
/// identity modulo `tau -> zeta*tau`.
pub fn orbit_of(b: &PuiseuxBranch) -> Result<BranchOrbit> {
    let group_size = b.field().automorphism_count();
    let mut members: Vec<PuiseuxBranch> = Vec::new();
    let mut witnesses: Vec<usize> = Vec::new();
    for g in 0..group_size {
        let image = b.apply_automorphism(g);
        let mut known = false;
        for m in &members {
            if same_branch(m, &image)? {
                known = true;
                break;
            }
        }
        if !known {
            members.push(image);
            witnesses.push(g);
        }
    }
    if group_size % members.len() != 0 {
        return Err(Error::Internal(format!(
            "orbit size {} does not divide the group order {group_size}",
            members.len()
        )));
    }
    Ok(BranchOrbit {
        representative: b.clone(),
        stabilizer_size: group_size / members.len(),
        members,
        witnesses,
    })
}

/// Orbit-summed M value of a labeled graph vertex: the sum of the
/// representative's intersections with one curvette per *distinct*
/// conjugate vertex.
///
/// The conjugate vertex of `g . b` coincides with the vertex of `b`
/// exactly when the two branches stay together at least as deep as the
/// vertex: the vertex's depth (the contact order of the branch with its
/// curvette) is at most the contact order of the two conjugates. Summing
/// over conjugate *curvettes* instead would overcount whenever conjugates
/// separate precisely at the vertex, at distinct points of the same
/// exceptional component.
pub fn orbit_m_value(orbit: &BranchOrbit, vertex: Vertex) -> Result<usize> {
    let rep = &orbit.representative;
    let curvette = curvette_at(rep, vertex)?;
    let depth = contact_order(rep, &curvette)
        .ok_or_else(|| Error::Internal("curvette coincides with its branch".into()))?;
    // The representative's own class contributes the certified m-value.
    let mut total = intersection_multiplicity(rep, &curvette)?;
    // Group the remaining conjugates into distinct vertices.
    let mut class_reps: Vec<&PuiseuxBranch> = Vec::new();
    for (member, &g) in orbit.members.iter().zip(&orbit.witnesses) {
        // Same vertex as the representative's?
        if contact_order(rep, member).map_or(true, |c| c >= depth) {
            continue;
        }
        // Same vertex as an already-counted class?
        if class_reps
            .iter()
            .any(|r| contact_order(r, member).map_or(true, |c| c >= depth))
        {
            continue;
        }
        class_reps.push(member);
        total += intersection_multiplicity(rep, &curvette.apply_automorphism(g))?;
    }
    Ok(total)
}

const MAX_GENERIC_TRIES: i64 = 40;

/// Curvette at the splitting vertex of separation exponent `d`: the shared
/// truncation of the separating conjugates extended by one generic term,
/// primitivized.
fn rho_curvette(rep: &PuiseuxBranch, d: usize, q: i64) -> Result<PuiseuxBranch> {
    let field = rep.field().clone();
    let mut gcd = num_integer::gcd(rep.m(), d);
    for (e, _) in rep.y_terms().take_while(|&(e, _)| e < d) {
        gcd = num_integer::gcd(gcd, e);
    }
    let mut terms: Vec<_> = rep
        .y_terms()
        .take_while(|&(e, _)| e < d)
        .map(|(e, c)| (e / gcd, c.clone()))
        .collect();
    terms.push((d / gcd, field.from_rational(Rat::from_integer(q.into()))));
    PuiseuxBranch::new(field, rep.m() / gcd, terms)
}

/// Orbit-summed M value at the splitting of separation exponent `d`,
/// certified by agreement of two consecutive generic coefficients.
fn rho_m_value(orbit: &BranchOrbit, d: usize, expected_deg: usize) -> Result<usize> {
    let rep = &orbit.representative;
    let mut last: Option<usize> = None;
    for q in 1..=MAX_GENERIC_TRIES {
        let curvette = rho_curvette(rep, d, q)?;
        let conjugates = orbit_of(&curvette)?;
        if conjugates.members.len() != expected_deg {
            return Err(Error::Internal(format!(
                "splitting curvette at exponent {d} has orbit size {}, expected {expected_deg}",
                conjugates.members.len()
            )));
        }
        let mut total = 0;
        let mut degenerate = false;
        for c in &conjugates.members {
            match intersection_multiplicity(rep, c) {
                Ok(v) => total += v,
                // The candidate coincides with the representative: not
                // generic, try the next coefficient.
                Err(Error::BranchValidation(_)) => {
                    degenerate = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if degenerate {
            last = None;
            continue;
        }
        match last {
            Some(prev) if prev == total => return Ok(total),
            _ => last = Some(total),
        }
    }
    Err(Error::GenericityFailure(
        MAX_GENERIC_TRIES as usize,
        format!("splitting M value at exponent {d} did not stabilize"),
    ))
}

/// Partition orbit indices by the equivalence "separation exponent > d";
/// blocks must have equal size (Galois orbits are homogeneous).
fn partition_blocks(seps: &[Vec<usize>], d: usize) -> Result<Vec<Vec<usize>>> {
    let n = seps.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let mut placed = false;
        for block in &mut blocks {
            let related = seps[block[0]][i] > d;
            // The relation must agree across the whole block
            // (ultrametricity of contact); disagreement signals a bug.
            for &j in block.iter() {
                if (seps[j][i] > d) != related {
                    return Err(Error::Internal(
                        "contact partition is not an equivalence relation".into(),
                    ));
                }
            }
            if related {
                block.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            blocks.push(vec![i]);
        }
    }
    let size = blocks[0].len();
    if blocks.iter().any(|b| b.len() != size) {
        return Err(Error::Internal(
            "contact partition has unequal block sizes".into(),
        ));
    }
    Ok(blocks)
}

/// Derive the full combinatorial graph data of a branch's orbit: base
/// M values for the dead ends and ruptures, plus one splitting per distinct
/// pairwise separation level.
pub fn splitting_tower(orbit: &BranchOrbit) -> Result<GResolutionData> {
    let rep = &orbit.representative;
    let cd = char_data(rep);
    let g = cd.g();
    let n = orbit.members.len();

    let mut seps = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = separation_exponent(&orbit.members[i], &orbit.members[j])?
                .ok_or_else(|| Error::Internal("orbit members are not distinct".into()))?;
            seps[i][j] = s;
            seps[j][i] = s;
        }
    }
    let mut levels: Vec<usize> = seps
        .iter()
        .flatten()
        .copied()
        .filter(|&s| s != usize::MAX)
        .collect();
    levels.sort_unstable();
    levels.dedup();

    let mut splittings = Vec::new();
    let mut block_size = n;
    for &d in &levels {
        let blocks = partition_blocks(&seps, d)?;
        let new_size = blocks[0].len();
        if new_size >= block_size || block_size % new_size != 0 {
            return Err(Error::Internal(
                "contact levels do not refine the partition chain".into(),
            ));
        }
        let deg = n / block_size;
        let ell = block_size / new_size;
        let m_rho = rho_m_value(orbit, d, deg)?;
        splittings.push(Splitting { m_rho, ell, deg });
        block_size = new_size;
    }
    debug_assert!(levels.is_empty() || block_size == 1);

    let mut m_sigma = Vec::with_capacity(g + 1);
    for i in 0..=g {
        m_sigma.push(orbit_m_value(orbit, Vertex::Sigma(i))?);
    }
    let mut m_tau = Vec::with_capacity(g);
    for i in 1..=g {
        m_tau.push(orbit_m_value(orbit, Vertex::Tau(i))?);
    }

    let data = GResolutionData {
        g,
        m_sigma,
        m_tau,
        splittings,
        divisorial: None,
    };
    data.validate()?;
    Ok(data)
}

/// Attach a divisorial datum to curve graph data; `deg_s` follows from
/// tower multiplicativity.
pub fn attach_divisorial(data: &GResolutionData, m_delta: usize) -> Result<GResolutionData> {
    if m_delta == 0 {
        return Err(Error::GraphValidation("M_delta must be positive".into()));
    }
    if let Some(last) = data.splittings.last() {
        if m_delta <= last.m_rho {
            return Err(Error::GraphValidation(format!(
                "M_delta = {m_delta} must exceed the last splitting's M_rho = {}",
                last.m_rho
            )));
        }
    }
    let mut out = data.clone();
    out.divisorial = Some(Divisorial {
        m_delta,
        deg_s: data.deg_s(),
    });
    out.validate()?;
    Ok(out)
}

/// Orbit-summed M value for a divisorial vertex, for branch-mode divisorial
/// input.
pub fn divisorial_m_value(orbit: &BranchOrbit, vertex: Vertex) -> Result<usize> {
    orbit_m_value(orbit, vertex)
}

/// Convenience map of all base M values of an orbit, keyed by vertex.
pub fn orbit_m_values(orbit: &BranchOrbit) -> Result<BTreeMap<Vertex, usize>> {
    let cd = char_data(&orbit.representative);
    let g = cd.g();
    let mut out = BTreeMap::new();
    for i in 0..=g {
        out.insert(Vertex::Sigma(i), orbit_m_value(orbit, Vertex::Sigma(i))?);
    }
    for i in 1..=g {
        out.insert(Vertex::Tau(i), orbit_m_value(orbit, Vertex::Tau(i))?);
    }
    Ok(out)
}
