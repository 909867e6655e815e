//! Points and lines of the m-dimensional Euclidean geometry EG(m, q).
//!
//! Points are the elements of F_{q^m}; a line is a coset `{a + g*d : g in
//! F_q}` of a one-dimensional F_q-subspace. The non-origin points are labeled
//! by exponents of the primitive element: coordinate `j` of an incidence
//! vector corresponds to `alpha^j`, for `j = 0 .. q^m - 2`. Multiplication
//! by `alpha` permutes the non-origin lines cyclically, which is what the
//! circulant structure downstream is built on.

use std::collections::BTreeSet;

use crate::binmat::BinVector;
use crate::error::{Error, Result};
use crate::field::{factor_prime_power, FieldElement, FieldTable};

#[derive(Debug)]
pub struct Geometry {
    m: u32,
    q: u64,
    field: FieldTable,
    /// The elements of the F_q subfield inside F_{q^m}, zero first.
    scalars: Vec<FieldElement>,
}

/// A line, stored as its sorted point set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    points: Vec<FieldElement>,
    through_origin: bool,
}

impl Line {
    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn through_origin(&self) -> bool {
        self.through_origin
    }

    pub fn contains(&self, p: FieldElement) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// Orbit of a non-origin line under multiplication by `alpha`.
#[derive(Debug, Clone)]
pub struct CyclicClass {
    /// Orbit member with the lexicographically smallest incidence vector.
    pub representative: Line,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineFilter {
    All,
    NotThroughOrigin,
    ThroughPoint(FieldElement),
}

impl Geometry {
    /// Builds EG(m, q) over the extension field F_{q^m} with the default
    /// (deterministically selected) primitive modulus.
    pub fn new(m: u32, q: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("dimension m must be >= 1".into()));
        }
        let (p, s) = factor_prime_power(q)?;
        let field = FieldTable::new(p, s * m, None)?;
        let scalars = field.subfield_elements(q)?;
        Ok(Geometry {
            m,
            q,
            field,
            scalars,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    /// Number of points, q^m.
    pub fn num_points(&self) -> u64 {
        self.field.order()
    }

    /// Number of non-origin points, q^m - 1.
    pub fn n(&self) -> usize {
        self.field.group_order() as usize
    }

    /// The unique line through two distinct points: `{a + g*(b - a)}` as `g`
    /// runs over F_q.
    pub fn line_through(&self, a: FieldElement, b: FieldElement) -> Result<Line> {
        if a == b {
            return Err(Error::CoincidentPoints);
        }
        let d = self.field.sub(b, a)?;
        self.line_from(a, d)
    }

    fn line_from(&self, anchor: FieldElement, direction: FieldElement) -> Result<Line> {
        debug_assert!(direction != self.field.zero());
        let mut points = Vec::with_capacity(self.q as usize);
        for &g in &self.scalars {
            let offset = self.field.mul(g, direction)?;
            points.push(self.field.add(anchor, offset)?);
        }
        points.sort_unstable();
        debug_assert_eq!(points.len(), self.q as usize);
        let through_origin = points[0] == self.field.zero();
        Ok(Line {
            points,
            through_origin,
        })
    }

    /// Canonical representative of the direction class `{g*d : g in F_q*}`:
    /// the member with the smallest encoding.
    pub fn line_direction(&self, line: &Line) -> Result<FieldElement> {
        let d = self.field.sub(line.points[1], line.points[0])?;
        self.canonical_direction(d)
    }

    fn canonical_direction(&self, d: FieldElement) -> Result<FieldElement> {
        let mut best = d;
        for &g in &self.scalars[1..] {
            let cand = self.field.mul(g, d)?;
            if cand < best {
                best = cand;
            }
        }
        Ok(best)
    }

    /// All lines matching the filter, deduplicated, in a deterministic order
    /// (by direction, then anchor).
    pub fn enumerate_lines(&self, filter: LineFilter) -> Result<Vec<Line>> {
        let order = self.num_points();
        let mut directions = Vec::new();
        for rep in 1..order {
            let d = self.field.element(rep)?;
            if self.canonical_direction(d)? == d {
                directions.push(d);
            }
        }
        let mut lines = Vec::new();
        let mut covered = vec![false; order as usize];
        for &d in &directions {
            covered.fill(false);
            for rep in 0..order {
                if covered[rep as usize] {
                    continue;
                }
                let line = self.line_from(self.field.element(rep)?, d)?;
                for &p in &line.points {
                    covered[p.rep() as usize] = true;
                }
                let keep = match filter {
                    LineFilter::All => true,
                    LineFilter::NotThroughOrigin => !line.through_origin,
                    LineFilter::ThroughPoint(p) => line.contains(p),
                };
                if keep {
                    lines.push(line);
                }
            }
        }
        Ok(lines)
    }

    /// The line `alpha * L`, pointwise multiplication by the primitive element.
    pub fn shift_line(&self, line: &Line) -> Result<Line> {
        let alpha = self.field.alpha_pow(1);
        let mut points = Vec::with_capacity(line.points.len());
        for &p in &line.points {
            points.push(self.field.mul(alpha, p)?);
        }
        points.sort_unstable();
        let through_origin = points.first() == Some(&self.field.zero());
        Ok(Line {
            points,
            through_origin,
        })
    }

    /// Binary vector of length n with bit `j` set iff `alpha^j` lies on the
    /// line. Lines through the origin have no such vector (the origin has no
    /// coordinate).
    pub fn incidence_vector(&self, line: &Line) -> Result<BinVector> {
        if line.through_origin {
            return Err(Error::LineThroughOrigin);
        }
        let mut v = BinVector::zeros(self.n());
        for &p in &line.points {
            v.set(self.field.log(p)? as usize, true);
        }
        Ok(v)
    }

    /// Partitions the non-origin lines into orbits under `L -> alpha*L`.
    /// Orbits are reported with their actual size; the expected full size is
    /// n. Classes are sorted by their representative's incidence vector.
    pub fn cyclic_classes(&self) -> Result<Vec<CyclicClass>> {
        let lines = self.enumerate_lines(LineFilter::NotThroughOrigin)?;
        let mut remaining: BTreeSet<Line> = lines.into_iter().collect();
        let mut classes = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let mut orbit_size = 0;
            let mut best: Option<(BinVector, Line)> = None;
            let mut current = start.clone();
            loop {
                remaining.remove(&current);
                orbit_size += 1;
                let vec = self.incidence_vector(&current)?;
                if best.as_ref().is_none_or(|(b, _)| vec < *b) {
                    best = Some((vec, current.clone()));
                }
                current = self.shift_line(&current)?;
                if current == start {
                    break;
                }
            }
            let (_, representative) = best.expect("orbit is nonempty");
            classes.push(CyclicClass {
                representative,
                orbit_size,
            });
        }
        classes.sort_by_key(|c| {
            self.incidence_vector(&c.representative)
                .expect("representative does not pass through the origin")
        });
        Ok(classes)
    }
}

/// Closed-form line counts used as cross-checks against enumeration.
pub mod counts {
    /// Total number of lines in EG(m, q).
    pub fn all_lines(m: u32, q: u64) -> u64 {
        q.pow(m - 1) * (q.pow(m) - 1) / (q - 1)
    }

    /// Lines not passing through the origin.
    pub fn lines_not_through_origin(m: u32, q: u64) -> u64 {
        (q.pow(m - 1) - 1) * (q.pow(m) - 1) / (q - 1)
    }

    /// Lines through any fixed point.
    pub fn lines_through_point(m: u32, q: u64) -> u64 {
        (q.pow(m) - 1) / (q - 1)
    }

    /// Number of cyclic classes of non-origin lines.
    pub fn cyclic_class_count(m: u32, q: u64) -> u64 {
        (q.pow(m - 1) - 1) / (q - 1)
    }
}
