//! Graded pieces of a quadratic algebra, degree by degree.
//!
//! `A_δ = (⊕_g A_{δ−deg g} ⊗ X_g) / R_δ`, where `R_δ` is spanned by the
//! images of `m ⊗ r` for `m` a basis element of `A_{δ−deg r}` and `r` a
//! quadratic relation. Each piece keeps the projection of its ambient onto
//! the quotient basis, so every step is a small rank problem.

use std::collections::HashMap;

use crate::linalg::Echelon;
use crate::par;
use crate::scalars::Field;

/// A generator block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub tag: String,
    pub dim: usize,
    pub deg: (usize, usize),
}

/// `Σ_{(g,h)} Σ_{β,γ} c[β·dim_h+γ] x^g_β x^h_γ`, homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadRelation<F> {
    pub terms: Vec<(usize, usize, Vec<F>)>,
}

/// Generator blocks and a spanning set of the degree-2 relations.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebraSpec<F> {
    pub blocks: Vec<Block>,
    pub relations: Vec<QuadRelation<F>>,
}

impl<F: Field> QuadraticAlgebraSpec<F> {
    pub fn new(blocks: Vec<Block>) -> Self {
        QuadraticAlgebraSpec { blocks, relations: Vec::new() }
    }

    /// Add one relation vector per column of `span`, all in slot `(g, h)`.
    pub fn add_span(&mut self, g: usize, h: usize, span: impl IntoIterator<Item = Vec<F>>) {
        let n = self.blocks[g].dim * self.blocks[h].dim;
        for v in span {
            assert_eq!(v.len(), n, "relation length");
            self.relations.push(QuadRelation { terms: vec![(g, h, v)] });
        }
    }

    /// Kill the whole slot `(g, h)`.
    pub fn kill_slot(&mut self, g: usize, h: usize) {
        let n = self.blocks[g].dim * self.blocks[h].dim;
        self.add_span(g, h, (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()));
    }

    fn degree(&self, r: &QuadRelation<F>) -> (usize, usize) {
        let (g, h, _) = &r.terms[0];
        let (a, b) = (self.blocks[*g].deg, self.blocks[*h].deg);
        (a.0 + b.0, a.1 + b.1)
    }

    /// Every relation has a single bidegree.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| {
            let d = self.degree(r);
            r.terms.iter().all(|(g, h, _)| {
                let (a, b) = (self.blocks[*g].deg, self.blocks[*h].deg);
                (a.0 + b.0, a.1 + b.1) == d
            })
        })
    }
}

struct Cell<F> {
    dim: usize,
    /// Offset of each block's columns in the ambient.
    offsets: Vec<Option<usize>>,
    /// Image of each ambient basis vector in quotient coordinates.
    proj: Vec<Vec<(usize, F)>>,
}

/// Memoized graded pieces of one algebra.
pub struct GradedQuotient<F> {
    spec: QuadraticAlgebraSpec<F>,
    cells: HashMap<(usize, usize), Cell<F>>,
}

fn sub(a: (usize, usize), b: (usize, usize)) -> Option<(usize, usize)> {
    (a.0 >= b.0 && a.1 >= b.1).then(|| (a.0 - b.0, a.1 - b.1))
}

impl<F: Field> GradedQuotient<F> {
    pub fn new(spec: QuadraticAlgebraSpec<F>) -> Self {
        assert!(spec.is_homogeneous(), "relations must be homogeneous");
        let mut cells = HashMap::new();
        cells.insert((0, 0), Cell { dim: 1, offsets: vec![None; spec.blocks.len()], proj: Vec::new() });
        GradedQuotient { spec, cells }
    }

    pub fn spec(&self) -> &QuadraticAlgebraSpec<F> {
        &self.spec
    }

    /// `dim A_{(k,l)}`.
    pub fn dim(&mut self, k: usize, l: usize) -> usize {
        for n in 0..=k + l {
            for a in 0..=n.min(k) {
                let b = n - a;
                if b <= l && !self.cells.contains_key(&(a, b)) {
                    let c = self.build((a, b));
                    self.cells.insert((a, b), c);
                }
            }
        }
        self.cells[&(k, l)].dim
    }

    fn build(&self, d: (usize, usize)) -> Cell<F> {
        let blocks = &self.spec.blocks;
        let mut offsets = vec![None; blocks.len()];
        let mut ambient = 0;
        for (g, b) in blocks.iter().enumerate() {
            if let Some(prev) = sub(d, b.deg) {
                offsets[g] = Some(ambient);
                ambient += self.cells[&prev].dim * b.dim;
            }
        }
        // (relation, basis element of the prefix piece)
        let mut jobs = Vec::new();
        for (ri, r) in self.spec.relations.iter().enumerate() {
            if let Some(pre) = sub(d, self.spec.degree(r)) {
                for m in 0..self.cells[&pre].dim {
                    jobs.push((ri, m));
                }
            }
        }
        let rows = par::map_range(jobs.len(), jobs.len() * ambient, |j| {
            let (ri, m) = jobs[j];
            let mut row = vec![F::zero(); ambient];
            for (g, h, coef) in &self.spec.relations[ri].terms {
                let (dg, dh) = (blocks[*g].dim, blocks[*h].dim);
                let mid_deg = sub(d, blocks[*h].deg).expect("relation degree");
                let mid = &self.cells[&mid_deg];
                let off_g = mid.offsets[*g].expect("prefix block");
                let off_h = offsets[*h].expect("last block");
                for beta in 0..dg {
                    let image = &mid.proj[off_g + m * dg + beta];
                    for gamma in 0..dh {
                        let c = &coef[beta * dh + gamma];
                        if c.is_zero() {
                            continue;
                        }
                        for (i, x) in image {
                            let col = off_h + i * dh + gamma;
                            row[col] = row[col].add(&c.mul(x));
                        }
                    }
                }
            }
            row
        });
        let mut ech = Echelon::new(ambient);
        ech.extend(rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        let free = ech.free_columns();
        let mut free_index = vec![usize::MAX; ambient];
        for (i, &f) in free.iter().enumerate() {
            free_index[f] = i;
        }
        let mut proj: Vec<Vec<(usize, F)>> = vec![Vec::new(); ambient];
        for &f in &free {
            proj[f] = vec![(free_index[f], F::one())];
        }
        let (rref, pivots) = ech.rref();
        for (i, &p) in pivots.iter().enumerate() {
            proj[p] = free
                .iter()
                .filter_map(|&f| {
                    let x = rref.get(i, f);
                    (!x.is_zero()).then(|| (free_index[f], x.neg()))
                })
                .collect();
        }
        Cell { dim: free.len(), offsets, proj }
    }
}
