//! Quasi-isometry verification between finite connected graphs, and the
//! exact constant calculus that transfers smallness through such maps.
//!
//! A map f: X → Y is an (L, A)-quasi-isometry when
//! `(1/L)·d_X(x,x′) − A <= d_Y(f(x),f(x′)) <= L·d_X(x,x′) + A` for all pairs
//! and every vertex of Y lies within distance A of the image. All distance
//! comparisons are exact rational comparisons on integer shortest-path
//! distances.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::ratio::Ratio;

/// A quasi-isometry instance: two connected graphs, a total vertex map, and
/// rational constants L >= 1, A >= 0. `degree_bound` is the larger of the two
/// maximum degrees.
#[derive(Clone, Debug)]
pub struct QiInstance {
    domain: Graph,
    codomain: Graph,
    map: Vec<u32>,
    l: Ratio,
    a: Ratio,
}

impl QiInstance {
    pub fn new(domain: Graph, codomain: Graph, map: Vec<u32>, l: Ratio, a: Ratio) -> Result<Self> {
        if domain.vertex_count() == 0 || !domain.is_connected() {
            return Err(Error::Domain(
                "the domain graph must be nonempty and connected".into(),
            ));
        }
        if codomain.vertex_count() == 0 || !codomain.is_connected() {
            return Err(Error::Domain(
                "the codomain graph must be nonempty and connected".into(),
            ));
        }
        if map.len() != domain.vertex_count() {
            return Err(Error::Domain(format!(
                "the map assigns {} vertices but the domain has {}",
                map.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y as usize >= codomain.vertex_count()) {
            return Err(Error::Domain(format!(
                "the map sends a vertex to {y}, outside the codomain"
            )));
        }
        if l < Ratio::one() {
            return Err(Error::Parameter(format!("L must be at least 1, got {l}")));
        }
        Ok(Self {
            domain,
            codomain,
            map,
            l,
            a,
        })
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn l(&self) -> &Ratio {
        &self.l
    }

    pub fn a(&self) -> &Ratio {
        &self.a
    }

    /// D = max(deg(X), deg(Y)).
    pub fn degree_bound(&self) -> usize {
        self.domain.max_degree().max(self.codomain.max_degree())
    }
}

/// A single failed quasi-isometry condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QiViolation {
    /// `(1/L)·d_X − A <= d_Y` failed for the pair.
    LowerBound {
        x: u32,
        x2: u32,
        domain_distance: u32,
        codomain_distance: u32,
    },
    /// `d_Y <= L·d_X + A` failed for the pair.
    UpperBound {
        x: u32,
        x2: u32,
        domain_distance: u32,
        codomain_distance: u32,
    },
    /// No image point lies within distance A of `y`.
    Density { y: u32, nearest_image_distance: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QiReport {
    pub ok: bool,
    pub violations: Vec<QiViolation>,
}

/// Checks every vertex pair against both displaced-distance inequalities and
/// every codomain vertex against A-density of the image. Returns the full
/// violation list.
pub fn verify_qi(inst: &QiInstance) -> Result<QiReport> {
    let dx = inst.domain.all_pairs_distances();
    let dy = inst.codomain.all_pairs_distances();
    let n = inst.domain.vertex_count() as u32;
    let l = &inst.l;
    let a = &inst.a;
    let mut violations = Vec::new();

    for x in 0..n {
        for x2 in (x + 1)..n {
            let d = dx.get(x, x2);
            let dimg = dy.get(inst.map[x as usize], inst.map[x2 as usize]);
            let d_r = Ratio::from_integer(d as u64);
            let dimg_r = Ratio::from_integer(dimg as u64);
            // (1/L)d − A <= d_img, rearranged to d <= L·(d_img + A).
            if d_r > &(l * &dimg_r) + &(l * a) {
                violations.push(QiViolation::LowerBound {
                    x,
                    x2,
                    domain_distance: d,
                    codomain_distance: dimg,
                });
            }
            if dimg_r > &(l * &d_r) + a {
                violations.push(QiViolation::UpperBound {
                    x,
                    x2,
                    domain_distance: d,
                    codomain_distance: dimg,
                });
            }
        }
    }

    for y in 0..inst.codomain.vertex_count() as u32 {
        let nearest = inst
            .map
            .iter()
            .map(|&img| dy.get(img, y))
            .min()
            .expect("the domain is nonempty");
        if Ratio::from_integer(nearest as u64) > *a {
            violations.push(QiViolation::Density {
                y,
                nearest_image_distance: nearest,
            });
        }
    }

    Ok(QiReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// β = D^(−L(A+2)−A−2) · α with a degenerate-degree note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBound {
    pub value: Ratio,
    /// D <= 1 graphs carry no information here; α is returned unchanged.
    pub degree_le_one: bool,
}

/// The smallness constant transferred through an (L, A)-quasi-isometry
/// between graphs of degree at most `d`: `β = d^(−L(A+2)−A−2) · α`.
///
/// The exponent must be an integer; otherwise a parameter error explains
/// that rounding L and A up to integers preserves the quasi-isometry and
/// only shrinks (weakens) β.
pub fn beta_bound(d: usize, l: &Ratio, a: &Ratio, alpha: &Ratio) -> Result<BetaBound> {
    if alpha.is_zero() {
        return Err(Error::Parameter("alpha must be positive".into()));
    }
    if d <= 1 {
        return Ok(BetaBound {
            value: alpha.clone(),
            degree_le_one: true,
        });
    }
    let two = Ratio::from_integer(2);
    let exponent = &(&(l * &(a + &two)) + a) + &two;
    let e = integral_exponent(&exponent, "L(A+2)+A+2")?;
    let power = Ratio::from_big_integer(Pow::pow(&BigInt::from(d as u64), e));
    Ok(BetaBound {
        value: alpha / &power,
        degree_le_one: false,
    })
}

fn integral_exponent(value: &Ratio, what: &str) -> Result<u32> {
    value.to_u32_exact().ok_or_else(|| {
        Error::Parameter(format!(
            "the exponent {what} = {value} is not a (small) non-negative integer; round L and A up to integers — enlarging them preserves the quasi-isometry and only shrinks the resulting bound"
        ))
    })
}

/// Fiber-size bound `max_y |f⁻¹(y)| <= D^(L(A+2)+1)` for a verified
/// quasi-isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheck {
    pub holds: bool,
    pub max_fiber: usize,
    pub bound: Ratio,
}

pub fn fiber_bound_check(inst: &QiInstance) -> Result<FiberCheck> {
    ensure_verified(inst)?;
    let two = Ratio::from_integer(2);
    let exponent = &(inst.l() * &(inst.a() + &two)) + &Ratio::one();
    let e = integral_exponent(&exponent, "L(A+2)+1")?;
    let bound = Ratio::from_big_integer(Pow::pow(&BigInt::from(inst.degree_bound() as u64), e));
    let mut fibers = vec![0usize; inst.codomain.vertex_count()];
    for &y in &inst.map {
        fibers[y as usize] += 1;
    }
    let max_fiber = fibers.into_iter().max().unwrap_or(0);
    Ok(FiberCheck {
        holds: Ratio::from_integer(max_fiber as u64) <= bound,
        max_fiber,
        bound,
    })
}

/// Image-density bound `|Y| <= D^(A+1)·|f(X)| <= D^(A+1)·|X|` for a verified
/// quasi-isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCheck {
    pub holds: bool,
    pub codomain_size: usize,
    pub image_size: usize,
    pub domain_size: usize,
    /// D^(A+1).
    pub factor: Ratio,
}

pub fn density_bound_check(inst: &QiInstance) -> Result<DensityCheck> {
    ensure_verified(inst)?;
    let exponent = inst.a() + &Ratio::one();
    let e = integral_exponent(&exponent, "A+1")?;
    let factor = Ratio::from_big_integer(Pow::pow(&BigInt::from(inst.degree_bound() as u64), e));
    let mut hit = vec![false; inst.codomain.vertex_count()];
    for &y in &inst.map {
        hit[y as usize] = true;
    }
    let image_size = hit.into_iter().filter(|&h| h).count();
    let codomain_size = inst.codomain.vertex_count();
    let domain_size = inst.domain.vertex_count();
    let cd = Ratio::from_integer(codomain_size as u64);
    let holds = cd <= &factor * &Ratio::from_integer(image_size as u64)
        && cd <= &factor * &Ratio::from_integer(domain_size as u64);
    Ok(DensityCheck {
        holds,
        codomain_size,
        image_size,
        domain_size,
        factor,
    })
}

/// Outcome of the preimage-smallness transfer check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreimageOutcome {
    /// B was nonempty, β-small, and its preimage is α-small.
    Holds { preimage_size: usize },
    /// B was empty; the check carries no content. The flag records whether
    /// any nonempty β-small subset exists at all at this scale.
    Vacuous { nonempty_beta_small_exists: bool },
    /// The transfer failed; this would falsify the bound and indicates a bug.
    Violated { preimage_size: usize },
}

/// Checks that the preimage of a β-small subset of the codomain is α-small
/// in the domain, with `β = beta_bound(D, L, A, α)`. `b` must be β-small.
pub fn preimage_small_check(
    inst: &QiInstance,
    b: &VertexSet,
    alpha: &Ratio,
) -> Result<PreimageOutcome> {
    ensure_verified(inst)?;
    if b.parent_size() != inst.codomain.vertex_count() {
        return Err(Error::Domain(
            "the subset must live on the codomain's vertices".into(),
        ));
    }
    let beta = beta_bound(inst.degree_bound(), inst.l(), inst.a(), alpha)?.value;
    let ny = inst.codomain.vertex_count();
    let beta_scale = &beta * &Ratio::from_integer(ny as u64);
    if Ratio::from_counts(b.len(), ny) >= beta {
        return Err(Error::Precondition(format!(
            "the subset has {} of {ny} vertices and is not β-small for β = {beta}",
            b.len()
        )));
    }
    if b.is_empty() {
        return Ok(PreimageOutcome::Vacuous {
            nonempty_beta_small_exists: beta_scale > Ratio::one(),
        });
    }
    let flags = b.membership_flags();
    let preimage_size = inst.map.iter().filter(|&&y| flags[y as usize]).count();
    let nx = inst.domain.vertex_count();
    if Ratio::from_counts(preimage_size, nx) < *alpha {
        Ok(PreimageOutcome::Holds { preimage_size })
    } else {
        Ok(PreimageOutcome::Violated { preimage_size })
    }
}

fn ensure_verified(inst: &QiInstance) -> Result<()> {
    let report = verify_qi(inst)?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "the instance fails quasi-isometry verification with {} violations",
            report.violations.len()
        )));
    }
    Ok(())
}

/// Parses a vertex-map document: one line `x y` per domain vertex, each
/// `x` in `0..domain_size` exactly once; `#` starts a comment line.
pub fn parse_map(text: &str, domain_size: usize, codomain_size: usize) -> Result<Vec<u32>> {
    let mut map = vec![None; domain_size];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let x = it.next().and_then(|t| t.parse::<usize>().ok());
        let y = it.next().and_then(|t| t.parse::<u32>().ok());
        let (x, y) = match (x, y, it.next()) {
            (Some(x), Some(y), None) => (x, y),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("malformed map line {line:?}, expected \"x y\""),
                })
            }
        };
        if x >= domain_size {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("domain vertex {x} out of range (n = {domain_size})"),
            });
        }
        if y as usize >= codomain_size {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("codomain vertex {y} out of range (n = {codomain_size})"),
            });
        }
        if map[x].replace(y).is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("domain vertex {x} mapped twice"),
            });
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("domain vertex {x} has no image"),
            })
        })
        .collect()
}
