//! Built-in example algebras.
//!
//! Every constructor returns an algebra that passes both validations.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::HomLeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Rational};

/// The two-dimensional example: `[e₂, e₂] = e₁`, all other brackets zero,
/// and `α = [[1, 1], [0, 1]]`.
pub fn paper_2dim() -> HomLeibnizAlgebra {
    HomLeibnizAlgebra::from_entries(
        2,
        &[(1, 1, 0, int(1))],
        Matrix::from_i64(&[&[1, 1], &[0, 1]]),
    )
    .expect("static example")
}

/// Zero bracket on `ℚⁿ` with an arbitrary structure map.
pub fn abelian(n: usize, alpha: Matrix) -> Result<HomLeibnizAlgebra> {
    HomLeibnizAlgebra::new(n, vec![Rational::zero(); n * n * n], alpha)
}

/// A Leibniz algebra viewed as a Hom-Leibniz algebra with `α = Id`.
/// Rejects brackets that fail the Leibniz identity.
pub fn leibniz_as_hom(dim: usize, bracket: Vec<Rational>) -> Result<HomLeibnizAlgebra> {
    let l = HomLeibnizAlgebra::new(dim, bracket, Matrix::identity(dim))?;
    l.require_validated()?;
    Ok(l)
}

/// Twist of a Leibniz algebra by a bracket morphism `α`:
/// `[x, y]_α = [α x, α y]` with structure map `α`.
pub fn twisted(leibniz: &HomLeibnizAlgebra, alpha: Matrix) -> Result<HomLeibnizAlgebra> {
    let d = leibniz.dim();
    if leibniz.alpha() != &Matrix::identity(d) {
        return Err(Error::InvalidParameters(
            "twisting expects a Leibniz algebra (structure map Id)".into(),
        ));
    }
    leibniz.require_validated()?;
    let candidate = leibniz.with_alpha(alpha.clone())?;
    if !candidate.verify_multiplicative().passed {
        return Err(Error::NotAMorphism);
    }
    let cols: Vec<Vec<Rational>> = (0..d).map(|j| alpha.column(j)).collect();
    let mut bracket = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            bracket.extend(leibniz.bracket_eval(&cols[i], &cols[j])?);
        }
    }
    let out = HomLeibnizAlgebra::new(d, bracket, alpha)?;
    out.require_validated()?;
    Ok(out)
}

/// Truncation of the free Leibniz algebra on `v_dim` generators: the span of
/// tensor words of length `1..=depth`, with `[w, v] = w ⊗ v` for generators
/// `v`, `[a, b ⊗ v] = [[a, b], v] − [[a, v], b]`, and words longer than
/// `depth` set to zero. `α = Id`.
///
/// Basis order: words by length, then lexicographically.
pub fn free_truncated(v_dim: usize, depth: usize) -> Result<HomLeibnizAlgebra> {
    if v_dim == 0 || depth == 0 {
        return Err(Error::InvalidParameters(
            "free_truncated needs v_dim ≥ 1 and depth ≥ 1".into(),
        ));
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    for len in 1..=depth {
        let start = words.len();
        if len == 1 {
            words.extend((0..v_dim).map(|v| vec![v]));
        } else {
            let prev: Vec<Vec<usize>> = words[start - v_dim.pow(len as u32 - 1)..start].to_vec();
            for w in &prev {
                for v in 0..v_dim {
                    let mut nw = w.clone();
                    nw.push(v);
                    words.push(nw);
                }
            }
        }
    }
    let index: HashMap<Vec<usize>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let d = words.len();
    let mut memo = HashMap::new();
    let mut bracket = vec![Rational::zero(); d * d * d];
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            for (w, c) in free_bracket(a, b, depth, &mut memo) {
                bracket[(i * d + j) * d + index[&w]] += int(c);
            }
        }
    }
    let l = HomLeibnizAlgebra::new(d, bracket, Matrix::identity(d))?;
    l.require_validated()?;
    Ok(l)
}

type WordCombination = Vec<(Vec<usize>, i64)>;

fn free_bracket(
    a: &[usize],
    b: &[usize],
    depth: usize,
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), WordCombination>,
) -> WordCombination {
    if a.len() + b.len() > depth {
        return Vec::new();
    }
    if b.len() == 1 {
        let mut w = a.to_vec();
        w.push(b[0]);
        return vec![(w, 1)];
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (head, v) = b.split_at(b.len() - 1);
    let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
    for (w, c1) in free_bracket(a, head, depth, memo) {
        for (w2, c2) in free_bracket(&w, v, depth, memo) {
            *acc.entry(w2).or_default() += c1 * c2;
        }
    }
    for (w, c1) in free_bracket(a, v, depth, memo) {
        for (w2, c2) in free_bracket(&w, head, depth, memo) {
            *acc.entry(w2).or_default() -= c1 * c2;
        }
    }
    let mut out: WordCombination = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort();
    memo.insert(key, out.clone());
    out
}

/// `[e, e] = e` on a line with `α = 0`. Its second α-type cohomology
/// vanishes, so it is rigid.
pub fn idempotent_line() -> HomLeibnizAlgebra {
    HomLeibnizAlgebra::new(1, vec![Rational::one()], Matrix::zeros(1, 1)).expect("static example")
}

/// `sl₂` in the basis `(e, f, h)` with `[e,f] = h`, `[h,e] = 2e`,
/// `[h,f] = −2f`; `α = Id`.
pub fn sl2() -> HomLeibnizAlgebra {
    let (e, f, h) = (0, 1, 2);
    HomLeibnizAlgebra::from_entries(
        3,
        &[
            (e, f, h, int(1)),
            (f, e, h, int(-1)),
            (h, e, e, int(2)),
            (e, h, e, int(-2)),
            (h, f, f, int(-2)),
            (f, h, f, int(2)),
        ],
        Matrix::identity(3),
    )
    .expect("static example")
}

/// `sl₂` twisted by the Weyl involution `e ↔ f`, `h ↦ −h`.
pub fn twisted_sl2() -> HomLeibnizAlgebra {
    twisted(
        &sl2(),
        Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]),
    )
    .expect("Weyl involution is an automorphism")
}

/// The Heisenberg Lie algebra `[e₁, e₂] = e₃`; `α = Id`.
pub fn heisenberg() -> HomLeibnizAlgebra {
    HomLeibnizAlgebra::from_entries(
        3,
        &[(0, 1, 2, int(1)), (1, 0, 2, int(-1))],
        Matrix::identity(3),
    )
    .expect("static example")
}

/// The non-Lie Leibniz plane `[e₁, e₂] = e₁`; `α = Id`.
pub fn leibniz_plane() -> HomLeibnizAlgebra {
    HomLeibnizAlgebra::from_entries(2, &[(0, 1, 0, int(1))], Matrix::identity(2))
        .expect("static example")
}

/// [`leibniz_plane`] twisted by `diag(2, 1)`.
pub fn twisted_leibniz_plane() -> HomLeibnizAlgebra {
    twisted(&leibniz_plane(), Matrix::from_i64(&[&[2, 0], &[0, 1]]))
        .expect("diag(2,1) is an automorphism")
}

/// `free_truncated(1, 3)` twisted by the grading automorphism `diag(2, 4, 8)`.
pub fn twisted_free_1_3() -> HomLeibnizAlgebra {
    let f = free_truncated(1, 3).expect("static example");
    twisted(&f, Matrix::from_i64(&[&[2, 0, 0], &[0, 4, 0], &[0, 0, 8]]))
        .expect("grading scaling is an automorphism")
}

/// Hemisemidirect product `sl₂ ⋉ ℚ²` with `[v, x] = −x·v` and `[x, v] = 0`,
/// twisted by the Weyl involution extended by `v₁ ↔ v₂`. Five-dimensional
/// and not a Lie algebra.
pub fn twisted_hemisemidirect() -> HomLeibnizAlgebra {
    let s = sl2();
    let d = 5;
    let mut entries = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let c = s.structure_constant(i, j, k);
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
    }
    // ρ(e), ρ(f), ρ(h) acting on (v₁, v₂)
    let rho = [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]];
    for (x, r) in rho.iter().enumerate() {
        for a in 0..2 {
            for b in 0..2 {
                if r[b][a] != 0 {
                    entries.push((3 + a, x, 3 + b, int(-r[b][a])));
                }
            }
        }
    }
    let base =
        HomLeibnizAlgebra::from_entries(d, &entries, Matrix::identity(d)).expect("static example");
    let swap = Matrix::from_i64(&[
        &[0, 1, 0, 0, 0],
        &[1, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0],
        &[0, 0, 0, 0, 1],
        &[0, 0, 0, 1, 0],
    ]);
    twisted(&base, swap).expect("swap is an automorphism")
}

/// A named corpus member.
#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: &'static str,
    pub algebra: HomLeibnizAlgebra,
}

/// The desk-scale corpus (dimension ≤ 3) used by the test suites.
pub fn corpus() -> Vec<NamedAlgebra> {
    let named = |name, algebra| NamedAlgebra { name, algebra };
    vec![
        named("paper_2dim", paper_2dim()),
        named(
            "abelian_2_id",
            abelian(2, Matrix::identity(2)).expect("static"),
        ),
        named(
            "abelian_2_jordan",
            abelian(2, Matrix::from_i64(&[&[1, 1], &[0, 1]])).expect("static"),
        ),
        named("idempotent_line", idempotent_line()),
        named("leibniz_plane", leibniz_plane()),
        named("twisted_leibniz_plane", twisted_leibniz_plane()),
        named("free_1_2", free_truncated(1, 2).expect("static")),
        named("twisted_free_1_3", twisted_free_1_3()),
        named("sl2", sl2()),
        named("twisted_sl2", twisted_sl2()),
        named("heisenberg", heisenberg()),
    ]
}

/// Looks up an example by name.
///
/// Recognized names: `paper_2dim`, `abelian` (params `[n]`, `α = Id`),
/// `free_truncated` (params `[v_dim, depth]`), `idempotent_line`, `sl2`,
/// `twisted_sl2`, `heisenberg`, `leibniz_plane`, `twisted_leibniz_plane`,
/// `twisted_free_1_3`, `twisted_hemisemidirect`.
pub fn corpus_example(name: &str, params: &[usize]) -> Result<HomLeibnizAlgebra> {
    let expect = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "`{name}` takes {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "paper_2dim" => expect(0).map(|_| paper_2dim()),
        "abelian" => {
            expect(1)?;
            if params[0] == 0 {
                return Err(Error::InvalidParameters(
                    "dimension must be positive".into(),
                ));
            }
            abelian(params[0], Matrix::identity(params[0]))
        }
        "free_truncated" => {
            expect(2)?;
            free_truncated(params[0], params[1])
        }
        "idempotent_line" => expect(0).map(|_| idempotent_line()),
        "sl2" => expect(0).map(|_| sl2()),
        "twisted_sl2" => expect(0).map(|_| twisted_sl2()),
        "heisenberg" => expect(0).map(|_| heisenberg()),
        "leibniz_plane" => expect(0).map(|_| leibniz_plane()),
        "twisted_leibniz_plane" => expect(0).map(|_| twisted_leibniz_plane()),
        "twisted_free_1_3" => expect(0).map(|_| twisted_free_1_3()),
        "twisted_hemisemidirect" => expect(0).map(|_| twisted_hemisemidirect()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}
