use super::{Cage, MultiIndex};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::LinearForm;

/// The sub-cage cut out on a color-1 hyperplane `H_{1,s}`.
///
/// Coordinates on `H_{1,s}` are the ambient ones with coordinate `dropped`
/// removed; `dropped` is the first coordinate where `L_{1,s}` is nonzero.
#[derive(Clone, Debug)]
pub struct Slice {
    pub cage: Cage,
    pub s: usize,
    pub width: usize,
    pub dropped: usize,
    hyperplane: LinearForm,
}

impl Slice {
    pub(super) fn new(parent: &Cage, s: usize, width: usize) -> Result<Slice> {
        if parent.n() < 2 {
            return Err(Error::Precondition("slicing needs n >= 2".into()));
        }
        let hyperplane = parent.form(0, s).clone();
        let a = hyperplane.coeffs();
        let dropped = a.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let a_inv = a[dropped].inverse()?;
        let groups = parent.groups()[1..]
            .iter()
            .map(|group| {
                group[..width]
                    .iter()
                    .map(|form| {
                        let c = form.coeffs();
                        let factor = &c[dropped] * &a_inv;
                        let restricted = (0..c.len())
                            .filter(|&k| k != dropped)
                            .map(|k| &c[k] - &(&factor * &a[k]))
                            .collect();
                        LinearForm::new(restricted)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidCage(format!("a form vanishes identically on H_(1,{s})")))?;
        let mut cage = Cage::new(parent.field(), groups)?;
        if parent.is_validated() {
            let report = cage.validate();
            if let Some(f) = report.failures.first() {
                return Err(Error::InvalidCage(format!("slice {s}: {f}")));
            }
        }
        Ok(Slice {
            cage,
            s,
            width,
            dropped,
            hyperplane,
        })
    }

    /// Embeds a point of the slice into the ambient space.
    pub fn lift(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let a = self.hyperplane.coeffs();
        if point.len() + 1 != a.len() {
            return Err(Error::Shape("slice point has the wrong dimension".into()));
        }
        let mut out = Vec::with_capacity(a.len());
        out.extend_from_slice(&point[..self.dropped]);
        out.push(self.cage.field().zero());
        out.extend_from_slice(&point[self.dropped..]);
        let mut acc = self.cage.field().zero();
        for (k, x) in out.iter().enumerate() {
            if k != self.dropped {
                acc = &acc + &(&a[k] * x);
            }
        }
        out[self.dropped] = -(&acc * &a[self.dropped].inverse()?);
        Ok(out)
    }

    /// Index of the parent node matching slice node `index`.
    pub fn lift_index(&self, index: &MultiIndex) -> MultiIndex {
        let mut e = Vec::with_capacity(index.len() + 1);
        e.push(self.s);
        e.extend_from_slice(index.entries());
        MultiIndex(e)
    }
}
