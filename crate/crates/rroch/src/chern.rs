//! Virtual bundles presented by rank and total Chern class.
//!
//! A `VirtualBundle` carries an integer-valued polynomial rank (a constant,
//! or symbolic in `t0`), a unit total Chern class in some graded ring, and
//! optionally an explicit list of signed Chern roots. Operations that are
//! defined on arbitrary virtual bundles (sum, dual, tensor, character, Todd
//! class) work from the Chern class alone; genuinely non-additive
//! constructions (exterior powers) require explicit roots.
//!
//! The tensor product uses the rank-zero `star0` kernel together with the
//! rank correction `u^n v^m`, so it applies to virtual and symbolic-rank
//! arguments; on honest split bundles it agrees with the pairwise-root
//! product.

use crate::arith::{IVPoly, Rational, Scalar};
use crate::error::CalcError;
use crate::series::{exp, inverse, log, pow_rank, GradedRing, Series, VarTable};
use crate::symfunc::star0;

/// A Chern root (a class of lowest degree 1) with an integer multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedRoot<R: GradedRing> {
    pub class: R,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VirtualBundle<R: GradedRing> {
    rank: IVPoly,
    chern: R,
    roots: Option<Vec<SignedRoot<R>>>,
}

impl<R: GradedRing> VirtualBundle<R> {
    /// A bundle given by rank and total Chern class; no root data.
    pub fn from_chern(rank: IVPoly, chern: R) -> Result<Self, CalcError> {
        if chern.constant_term() != R::Coeff::one() {
            return Err(CalcError::ConstantTermNotOne);
        }
        Ok(VirtualBundle {
            rank,
            chern,
            roots: None,
        })
    }

    /// A bundle split into the given signed roots.
    pub fn from_roots(sample: &R, roots: Vec<SignedRoot<R>>) -> Result<Self, CalcError> {
        let mut rank: i64 = 0;
        let mut chern = sample.one_like();
        for r in &roots {
            if !r.class.constant_term().is_zero() {
                return Err(CalcError::NonzeroConstantTerm);
            }
            rank += r.mult;
            let factor = sample.one_like().add(&r.class);
            chern = chern.mul(&crate::series::int_pow(&factor, r.mult)?);
        }
        Ok(VirtualBundle {
            rank: IVPoly::constant(Rational::from_int(rank)),
            chern,
            roots: Some(roots),
        })
    }

    /// The line bundle with first Chern class `x`.
    pub fn line(x: &R) -> Result<Self, CalcError> {
        VirtualBundle::from_roots(
            x,
            vec![SignedRoot {
                class: x.clone(),
                mult: 1,
            }],
        )
    }

    /// The trivial bundle of the given (possibly symbolic) rank.
    pub fn trivial(sample: &R, rank: IVPoly) -> Self {
        VirtualBundle {
            rank,
            chern: sample.one_like(),
            roots: Some(Vec::new()),
        }
    }

    pub fn rank(&self) -> &IVPoly {
        &self.rank
    }

    pub fn chern(&self) -> &R {
        &self.chern
    }

    /// The i-th Chern class.
    pub fn chern_class(&self, i: u32) -> R {
        self.chern.component(i)
    }

    pub fn roots(&self) -> Option<&[SignedRoot<R>]> {
        self.roots.as_deref()
    }

    fn trunc(&self) -> u32 {
        self.chern.trunc()
    }

    /// Whitney sum: ranks add, Chern classes multiply.
    pub fn sum(&self, other: &Self) -> Self {
        let roots = match (&self.roots, &other.roots) {
            (Some(a), Some(b)) => {
                let mut r = a.clone();
                r.extend(b.iter().cloned());
                Some(r)
            }
            _ => None,
        };
        VirtualBundle {
            rank: self.rank.add(&other.rank),
            chern: self.chern.mul(&other.chern),
            roots,
        }
    }

    /// Additive inverse in the Grothendieck group.
    pub fn neg(&self) -> Result<Self, CalcError> {
        let roots = self.roots.as_ref().map(|rs| {
            rs.iter()
                .map(|r| SignedRoot {
                    class: r.class.clone(),
                    mult: -r.mult,
                })
                .collect()
        });
        Ok(VirtualBundle {
            rank: self.rank.neg(),
            chern: inverse(&self.chern)?,
            roots,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CalcError> {
        Ok(self.sum(&other.neg()?))
    }

    /// Dual bundle: roots change sign, so `c_i` picks up `(-1)^i`.
    pub fn dual(&self) -> Self {
        let mut chern = self.chern.zero_like();
        for d in 0..=self.trunc() {
            let comp = self.chern.component(d);
            if d % 2 == 0 {
                chern = chern.add(&comp);
            } else {
                chern = chern.sub(&comp);
            }
        }
        let roots = self.roots.as_ref().map(|rs| {
            rs.iter()
                .map(|r| SignedRoot {
                    class: r.class.neg(),
                    mult: r.mult,
                })
                .collect()
        });
        VirtualBundle {
            rank: self.rank.clone(),
            chern,
            roots,
        }
    }

    /// Positive roots, with multiplicities expanded out; errors when root
    /// data is missing or any multiplicity is negative.
    fn expanded_roots(&self) -> Result<Vec<R>, CalcError> {
        let roots = self.roots.as_ref().ok_or(CalcError::RootsRequired)?;
        let mut out = Vec::new();
        for r in roots {
            if r.mult < 0 {
                return Err(CalcError::RootsRequired);
            }
            for _ in 0..r.mult {
                out.push(r.class.clone());
            }
        }
        Ok(out)
    }

    /// k-th exterior power of a split bundle; the roots of the result are
    /// the k-fold subset sums of the roots.
    pub fn exterior_power(&self, k: usize) -> Result<Self, CalcError> {
        let xs = self.expanded_roots()?;
        let sample = &self.chern;
        let mut roots = Vec::new();
        if k > xs.len() {
            return VirtualBundle::from_roots(sample, roots);
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut class = sample.zero_like();
            for &i in &subset {
                class = class.add(&xs[i]);
            }
            roots.push(SignedRoot { class, mult: 1 });
            if k == 0 {
                break;
            }
            let n = xs.len();
            let mut i = k;
            loop {
                if i == 0 {
                    return VirtualBundle::from_roots(sample, roots);
                }
                i -= 1;
                if subset[i] != i + n - k {
                    break;
                }
            }
            if subset[i] == i + n - k {
                return VirtualBundle::from_roots(sample, roots);
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        VirtualBundle::from_roots(sample, roots)
    }

    /// The alternating sum of exterior powers of the dual,
    /// `sum_k (-1)^k lambda^k(E*)`. Its Chern class is the signed subset
    /// product over the roots.
    pub fn lambda_minus_one_dual(&self) -> Result<Self, CalcError> {
        let xs = self.expanded_roots()?;
        let r = xs.len();
        let one = self.chern.one_like();
        let mut chern = one.clone();
        for mask in 0u32..(1 << r) {
            let mut base = one.clone();
            for (i, x) in xs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    base = base.sub(x);
                }
            }
            if mask.count_ones() % 2 == 0 {
                chern = chern.mul(&base);
            } else {
                chern = chern.mul(&inverse(&base)?);
            }
        }
        let rank = if r == 0 { 1 } else { 0 };
        VirtualBundle::from_chern(IVPoly::constant(Rational::from_int(rank)), chern)
    }

    /// Tensor product in the lambda-ring: ranks multiply and
    /// `c(E (x) F) = star0(c(E), c(F)) c(E)^{rk F} c(F)^{rk E}`.
    pub fn star(&self, other: &Self) -> Result<Self, CalcError> {
        let kernel = star0(&self.chern, &other.chern)?;
        let chern = kernel
            .mul(&pow_rank(&self.chern, &other.rank)?)
            .mul(&pow_rank(&other.chern, &self.rank)?);
        VirtualBundle::from_chern(self.rank.mul(&other.rank), chern)
    }

    /// Power sums of the Chern roots, recovered from the Chern class:
    /// `p_k = (-1)^{k-1} k (log c)_k`.
    fn power_sums(&self) -> Result<Vec<R>, CalcError> {
        let l = log(&self.chern)?;
        let mut out = vec![self.chern.zero_like()];
        for k in 1..=self.trunc() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = R::Coeff::from_rational(&Rational::from_int(sign * i64::from(k)));
            out.push(l.component(k).scale(&c));
        }
        Ok(out)
    }

    /// Chern character `rk + sum_i e^{x_i} - rk` expressed through the
    /// power sums; exact in the scalar domain.
    pub fn chern_character(&self) -> Result<R, CalcError> {
        let rank_scalar =
            R::Coeff::from_t0_poly(&self.rank).ok_or(CalcError::SymbolicExponent)?;
        let mut out = self.chern.one_like().scale(&rank_scalar);
        let p = self.power_sums()?;
        let mut fact = Rational::one();
        for k in 1..=self.trunc() {
            fact = fact.mul(&Rational::from_int(i64::from(k)));
            let c = R::Coeff::from_rational(&Rational::one().div(&fact));
            out = out.add(&p[k as usize].scale(&c));
        }
        Ok(out)
    }

    /// Todd class `prod x_i/(1 - e^{-x_i})`, computed through the power
    /// sums with the one-variable expansion of `log(x/(1-e^{-x}))`.
    pub fn todd(&self) -> Result<R, CalcError> {
        let a = todd_log_coefficients(self.trunc());
        let p = self.power_sums()?;
        let mut acc = self.chern.zero_like();
        for k in 1..=self.trunc() {
            let c = R::Coeff::from_rational(&a[k as usize]);
            acc = acc.add(&p[k as usize].scale(&c));
        }
        exp(&acc)
    }
}

/// Coefficients of `log(x/(1 - e^{-x})) = sum_k a_k x^k` up to degree
/// `trunc`, obtained by inverting `(1 - e^{-x})/x = sum_j (-x)^j/(j+1)!`.
fn todd_log_coefficients(trunc: u32) -> Vec<Rational> {
    let vt = VarTable::new(&[("x", 1)]).unwrap();
    let mut s = Series::<Rational>::zero(vt.clone(), trunc);
    let mut fact = Rational::one();
    for j in 0..=trunc {
        fact = fact.mul(&Rational::from_int(i64::from(j) + 1));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = Rational::from_int(sign).div(&fact);
        s = s.add(&Series::from_term(vt.clone(), trunc, vec![j as u16], c));
    }
    let l = log(&inverse(&s).unwrap()).unwrap();
    (0..=trunc).map(|k| l.coeff(&[k as u16])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int_pow;
    use crate::symfunc::{subset_product, Alphabet};
    use std::sync::Arc;

    fn roots_env(n: usize, trunc: u32) -> (Arc<VarTable>, Vec<Series<Rational>>) {
        let pairs: Vec<(String, u32)> = (1..=n).map(|i| (format!("x{i}"), 1)).collect();
        let vt = VarTable::new(&pairs).unwrap();
        let xs = (1..=n)
            .map(|i| Series::<Rational>::var(vt.clone(), trunc, &format!("x{i}")).unwrap())
            .collect();
        (vt, xs)
    }

    fn split(xs: &[Series<Rational>]) -> VirtualBundle<Series<Rational>> {
        let roots = xs
            .iter()
            .map(|x| SignedRoot {
                class: x.clone(),
                mult: 1,
            })
            .collect();
        VirtualBundle::from_roots(&xs[0], roots).unwrap()
    }

    #[test]
    fn whitney_and_neg() {
        let (vt, xs) = roots_env(2, 4);
        let one = Series::<Rational>::one(vt.clone(), 4);
        let e = split(&xs);
        assert_eq!(
            *e.chern(),
            one.add(&xs[0]).mul(&one.add(&xs[1]))
        );
        assert_eq!(e.rank().as_integer(), Some(2));
        let z = e.sub(&e).unwrap();
        assert_eq!(*z.chern(), one);
        assert_eq!(z.rank().as_integer(), Some(0));
        // Line + line = split pair.
        let l1 = VirtualBundle::line(&xs[0]).unwrap();
        let l2 = VirtualBundle::line(&xs[1]).unwrap();
        assert_eq!(l1.sum(&l2).chern(), e.chern());
    }

    #[test]
    fn dual_signs() {
        let (_, xs) = roots_env(3, 4);
        let e = split(&xs);
        let d = e.dual();
        for i in 0..=4u32 {
            let sign = if i % 2 == 0 {
                Rational::one()
            } else {
                Rational::from_int(-1)
            };
            assert_eq!(d.chern_class(i), e.chern_class(i).scale(&sign));
        }
        // Root route agrees.
        let via_roots = VirtualBundle::from_roots(
            e.chern(),
            d.roots().unwrap().to_vec(),
        )
        .unwrap();
        assert_eq!(via_roots.chern(), d.chern());
    }

    #[test]
    fn exterior_power_of_rank_three() {
        let (vt, xs) = roots_env(3, 4);
        let e = split(&xs);
        let l2 = e.exterior_power(2).unwrap();
        assert_eq!(l2.rank().as_integer(), Some(3));
        // Roots are the pairwise sums.
        let one = Series::<Rational>::one(vt.clone(), 4);
        let mut expect = one.clone();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            expect = expect.mul(&one.add(&xs[i]).add(&xs[j]));
        }
        assert_eq!(*l2.chern(), expect);
        // c1(Lambda^2 E) = (r-1) c1(E) for r = 3.
        assert_eq!(
            l2.chern_class(1),
            e.chern_class(1).scale(&Rational::from_int(2))
        );
        // Lambda^0 is trivial, Lambda^3 is the determinant line.
        assert_eq!(*e.exterior_power(0).unwrap().chern(), one);
        let det = e.exterior_power(3).unwrap();
        assert_eq!(
            *det.chern(),
            one.add(&xs[0]).add(&xs[1]).add(&xs[2])
        );
        assert_eq!(e.exterior_power(4).unwrap().rank().as_integer(), Some(0));
    }

    #[test]
    fn lambda_minus_one_dual_routes_agree() {
        let (vt, xs) = roots_env(2, 4);
        let e = split(&xs);
        let lam = e.lambda_minus_one_dual().unwrap();
        assert_eq!(lam.rank().as_integer(), Some(0));

        // Route 1: alternating Whitney sum of exterior powers of the dual.
        let d = e.dual();
        let mut alt = d.exterior_power(0).unwrap();
        for k in 1..=2usize {
            let lk = d.exterior_power(k).unwrap();
            if k % 2 == 1 {
                alt = alt.sub(&lk).unwrap();
            } else {
                alt = alt.sum(&lk);
            }
        }
        assert_eq!(alt.chern(), lam.chern());
        assert_eq!(alt.rank(), lam.rank());

        // Route 2: signed subset product with zero shift.
        let alph = Alphabet::numbered("x", 2);
        let zero = Series::<Rational>::zero(vt.clone(), 4);
        let sp = subset_product(&vt, 4, &alph, &zero).unwrap();
        assert_eq!(*lam.chern(), sp);
    }

    #[test]
    fn star_matches_pairwise_roots() {
        // (x1, x2) tensor (y) with all roots genuine.
        let pairs = [("x1", 1u32), ("x2", 1), ("y", 1)];
        let vt = VarTable::new(&pairs).unwrap();
        let n = 4;
        let x1 = Series::<Rational>::var(vt.clone(), n, "x1").unwrap();
        let x2 = Series::<Rational>::var(vt.clone(), n, "x2").unwrap();
        let y = Series::<Rational>::var(vt.clone(), n, "y").unwrap();
        let e = split(&[x1.clone(), x2.clone()]);
        let f = VirtualBundle::line(&y).unwrap();
        let t = e.star(&f).unwrap();
        assert_eq!(t.rank().as_integer(), Some(2));
        let one = Series::<Rational>::one(vt.clone(), n);
        let expect = one
            .add(&x1)
            .add(&y)
            .mul(&one.add(&x2).add(&y));
        assert_eq!(*t.chern(), expect);
    }

    #[test]
    fn star_with_trivial_and_symbolic_rank() {
        let vt = VarTable::new(&[("x", 1)]).unwrap();
        let n = 3;
        let x = Series::<IVPoly>::var(vt.clone(), n, "x").unwrap();
        let l = VirtualBundle::line(&x).unwrap();
        // Tensoring with the trivial line changes nothing.
        let triv = VirtualBundle::trivial(l.chern(), IVPoly::one());
        assert_eq!(l.star(&triv).unwrap().chern(), l.chern());
        // Tensoring with O^{t0}: c = (1+x)^{t0}.
        let sym = VirtualBundle::trivial(l.chern(), IVPoly::t0());
        let t = l.star(&sym).unwrap();
        let expect = crate::series::pow_binomial(
            &Series::<IVPoly>::one(vt.clone(), n).add(&x),
            &IVPoly::t0(),
        )
        .unwrap();
        assert_eq!(*t.chern(), expect);
        assert_eq!(t.rank(), &IVPoly::t0());
    }

    #[test]
    fn chern_character_examples() {
        let (vt, xs) = roots_env(2, 4);
        let one = Series::<Rational>::one(vt.clone(), 4);
        // ch of a line bundle is e^x.
        let l = VirtualBundle::line(&xs[0]).unwrap();
        assert_eq!(l.chern_character().unwrap(), exp(&xs[0]).unwrap());
        // ch of a split bundle is the sum of root exponentials.
        let e = split(&xs);
        let oracle = exp(&xs[0]).unwrap().add(&exp(&xs[1]).unwrap());
        assert_eq!(e.chern_character().unwrap(), oracle);
        // Additive over sums, multiplicative over tensor.
        let f = VirtualBundle::line(&xs[1]).unwrap();
        assert_eq!(
            l.sum(&f).chern_character().unwrap(),
            l.chern_character()
                .unwrap()
                .add(&f.chern_character().unwrap())
        );
        assert_eq!(
            l.star(&f).unwrap().chern_character().unwrap(),
            l.chern_character()
                .unwrap()
                .mul(&f.chern_character().unwrap())
        );
        // ch of the trivial bundle is its rank.
        let triv = VirtualBundle::trivial(&one, IVPoly::constant(Rational::from_int(5)));
        assert_eq!(
            triv.chern_character().unwrap(),
            one.scale(&Rational::from_int(5))
        );
    }

    #[test]
    fn todd_of_line_bundle() {
        // td(L) = x/(1-e^{-x}) = 1 + x/2 + x^2/12 + 0 x^3 - x^4/720.
        let vt = VarTable::new(&[("x", 1)]).unwrap();
        let n = 4;
        let x = Series::<Rational>::var(vt.clone(), n, "x").unwrap();
        let l = VirtualBundle::line(&x).unwrap();
        let td = l.todd().unwrap();
        let one = Series::<Rational>::one(vt.clone(), n);
        let x2 = x.mul(&x);
        let expect = one
            .add(&x.scale(&Rational::new(1, 2)))
            .add(&x2.scale(&Rational::new(1, 12)))
            .sub(&x2.mul(&x2).scale(&Rational::new(1, 720)));
        assert_eq!(td, expect);
        // Direct oracle: x/(1-e^{-x}) as inverse of sum (-x)^j/(j+1)!.
        let mut s = Series::<Rational>::zero(vt.clone(), n);
        let mut fact = Rational::one();
        for j in 0..=n {
            fact = fact.mul(&Rational::from_int(i64::from(j) + 1));
            let sign = if j % 2 == 0 { 1 } else { -1 };
            s = s.add(&Series::from_term(
                vt.clone(),
                n,
                vec![j as u16],
                Rational::from_int(sign).div(&fact),
            ));
        }
        assert_eq!(td, inverse(&s).unwrap());
    }

    #[test]
    fn todd_multiplicative_and_trivial() {
        let (vt, xs) = roots_env(2, 5);
        let one = Series::<Rational>::one(vt.clone(), 5);
        let e = split(&xs);
        let l1 = VirtualBundle::line(&xs[0]).unwrap();
        let l2 = VirtualBundle::line(&xs[1]).unwrap();
        assert_eq!(
            e.todd().unwrap(),
            l1.todd().unwrap().mul(&l2.todd().unwrap())
        );
        let triv = VirtualBundle::trivial(&one, IVPoly::constant(Rational::from_int(3)));
        assert_eq!(triv.todd().unwrap(), one);
        // td of a formal difference inverts.
        let d = l1.sub(&l2).unwrap();
        assert_eq!(
            d.todd().unwrap(),
            l1.todd()
                .unwrap()
                .mul(&inverse(&l2.todd().unwrap()).unwrap())
        );
    }

    #[test]
    fn character_and_todd_depend_only_on_chern_class() {
        // Same data through from_chern must match the root route.
        let (_, xs) = roots_env(2, 4);
        let e = split(&xs);
        let e2 = VirtualBundle::from_chern(e.rank().clone(), e.chern().clone()).unwrap();
        assert_eq!(e.chern_character().unwrap(), e2.chern_character().unwrap());
        assert_eq!(e.todd().unwrap(), e2.todd().unwrap());
        // Negative multiplicities through int_pow agree with neg().
        let l = VirtualBundle::line(&xs[0]).unwrap();
        let n = l.neg().unwrap();
        let one_plus = xs[0].one_like().add(&xs[0]);
        assert_eq!(*n.chern(), int_pow(&one_plus, -1).unwrap());
    }
}
