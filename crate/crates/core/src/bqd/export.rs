use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::{make_derived, Bqd, K};
use crate::linalg::row_space_rank;
use crate::scalars::{BaseField, Field, ScalarError};

/// Generator `t^i_j` (`0..9`) or `u^α_β` (`9..18`), zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T(usize, usize),
    U(usize, usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::T(i, j) => 3 * i + j,
            Generator::U(a, b) => 9 + 3 * a + b,
        }
    }

    pub fn from_index(n: usize) -> Self {
        if n < 9 {
            Generator::T(n / 3, n % 3)
        } else {
            Generator::U((n - 9) / 3, (n - 9) % 3)
        }
    }

    pub fn name(self) -> String {
        match self {
            Generator::T(i, j) => format!("t^{}_{}", i + 1, j + 1),
            Generator::U(a, b) => format!("u^{}_{}", a + 1, b + 1),
        }
    }
}

fn t(i: usize, j: usize) -> usize {
    Generator::T(i, j).index()
}

fn u(a: usize, b: usize) -> usize {
    Generator::U(a, b).index()
}

/// `coef · word`, a word being a product of generator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<B: BaseField> {
    pub coef: K<B>,
    pub word: Vec<usize>,
}

/// A relation `Σ terms = 0` in the free algebra on the 18 generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation<B: BaseField> {
    pub family: &'static str,
    /// One-based free indices identifying the relation within its family.
    pub index: Vec<usize>,
    pub terms: Vec<Term<B>>,
}

struct Acc<B: BaseField>(BTreeMap<Vec<usize>, K<B>>);

impl<B: BaseField> Default for Acc<B> {
    fn default() -> Self {
        Acc(BTreeMap::new())
    }
}

impl<B: BaseField> Acc<B> {
    fn add(&mut self, coef: &K<B>, word: &[usize]) {
        if coef.is_zero() {
            return;
        }
        let e = self.0.entry(word.to_vec()).or_insert_with(K::<B>::zero);
        *e = e.add(coef);
    }

    fn finish(self, family: &'static str, index: &[usize]) -> Relation<B> {
        let terms = self
            .0
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(word, coef)| Term { coef, word })
            .collect();
        Relation { family, index: index.iter().map(|i| i + 1).collect(), terms }
    }
}

/// The finite presentation of the reconstructed Hopf algebra.
#[derive(Debug, Clone)]
pub struct PresentationDoc<B: BaseField> {
    pub name: String,
    /// The 4·27 + 4·9 relations from the eight structure tensors.
    pub relations: Vec<Relation<B>>,
    /// The alternative presentation with the `F`-exchange relations.
    pub alt_relations: Vec<Relation<B>>,
    /// `S(g)` for each generator `g`, in generator order.
    pub antipode: Vec<Vec<Term<B>>>,
}

fn quadratic_families<B: BaseField>(bqd: &Bqd<B>, out: &mut Vec<Relation<B>>) {
    let (a_up, a, b_up, b) = (bqd.A(), bqd.a(), bqd.B(), bqd.b());
    let neg = |x: &K<B>| x.neg();
    for al in 0..3 {
        for k in 0..3 {
            for l in 0..3 {
                let mut acc = Acc::<B>::default();
                for i in 0..3 {
                    for j in 0..3 {
                        acc.add(a_up.get(al, 3 * i + j), &[t(i, k), t(j, l)]);
                    }
                }
                for be in 0..3 {
                    acc.add(&neg(a_up.get(be, 3 * k + l)), &[u(al, be)]);
                }
                out.push(acc.finish("A(t,t)=uA", &[al, k, l]));
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for al in 0..3 {
                let mut acc = Acc::<B>::default();
                for k in 0..3 {
                    for l in 0..3 {
                        acc.add(a.get(3 * k + l, al), &[t(i, k), t(j, l)]);
                    }
                }
                for be in 0..3 {
                    acc.add(&neg(a.get(3 * i + j, be)), &[u(be, al)]);
                }
                out.push(acc.finish("(t,t)a=au", &[i, j, al]));
            }
        }
    }
    for i in 0..3 {
        for al in 0..3 {
            for be in 0..3 {
                let mut acc = Acc::<B>::default();
                for g in 0..3 {
                    for d in 0..3 {
                        acc.add(b_up.get(i, 3 * g + d), &[u(g, al), u(d, be)]);
                    }
                }
                for j in 0..3 {
                    acc.add(&neg(b_up.get(j, 3 * al + be)), &[t(i, j)]);
                }
                out.push(acc.finish("B(u,u)=tB", &[i, al, be]));
            }
        }
    }
    for al in 0..3 {
        for be in 0..3 {
            for i in 0..3 {
                let mut acc = Acc::<B>::default();
                for g in 0..3 {
                    for d in 0..3 {
                        acc.add(b.get(3 * g + d, i), &[u(al, g), u(be, d)]);
                    }
                }
                for j in 0..3 {
                    acc.add(&neg(b.get(3 * al + be, j)), &[t(j, i)]);
                }
                out.push(acc.finish("(u,u)b=bt", &[al, be, i]));
            }
        }
    }
}

fn pairing_d_c<B: BaseField>(bqd: &Bqd<B>, out: &mut Vec<Relation<B>>) {
    let (c, d_up) = (bqd.c(), bqd.D());
    for j in 0..3 {
        for be in 0..3 {
            let mut acc = Acc::<B>::default();
            for i in 0..3 {
                for al in 0..3 {
                    acc.add(d_up.get(0, 3 * i + al), &[t(i, j), u(al, be)]);
                }
            }
            acc.add(&d_up.get(0, 3 * j + be).neg(), &[]);
            out.push(acc.finish("D(t,u)=D", &[j, be]));
        }
    }
    for i in 0..3 {
        for al in 0..3 {
            let mut acc = Acc::<B>::default();
            for j in 0..3 {
                for be in 0..3 {
                    acc.add(c.get(3 * j + be, 0), &[t(i, j), u(al, be)]);
                }
            }
            acc.add(&c.get(3 * i + al, 0).neg(), &[]);
            out.push(acc.finish("(t,u)c=c", &[i, al]));
        }
    }
}

fn pairing_c_d<B: BaseField>(bqd: &Bqd<B>, out: &mut Vec<Relation<B>>) {
    let (c_up, d) = (bqd.C(), bqd.d());
    for be in 0..3 {
        for j in 0..3 {
            let mut acc = Acc::<B>::default();
            for al in 0..3 {
                for i in 0..3 {
                    acc.add(c_up.get(0, 3 * al + i), &[u(al, be), t(i, j)]);
                }
            }
            acc.add(&c_up.get(0, 3 * be + j).neg(), &[]);
            out.push(acc.finish("C(u,t)=C", &[be, j]));
        }
    }
    for al in 0..3 {
        for i in 0..3 {
            let mut acc = Acc::<B>::default();
            for be in 0..3 {
                for j in 0..3 {
                    acc.add(d.get(3 * be + j, 0), &[u(al, be), t(i, j)]);
                }
            }
            acc.add(&d.get(3 * al + i, 0).neg(), &[]);
            out.push(acc.finish("(u,t)d=d", &[al, i]));
        }
    }
}

/// Build the presentation document.
pub fn export_presentation<B: BaseField>(bqd: &Bqd<B>) -> Result<PresentationDoc<B>, ScalarError> {
    let mut relations = Vec::with_capacity(144);
    quadratic_families(bqd, &mut relations);
    let mut tail = Vec::new();
    pairing_d_c(bqd, &mut tail);
    pairing_c_d(bqd, &mut relations);
    relations.extend(tail.iter().cloned());

    let mut alt = Vec::with_capacity(207);
    quadratic_families(bqd, &mut alt);
    alt.extend(tail);
    let f = make_derived(bqd)?.F.into_mat();
    for al in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for be in 0..3 {
                    let mut acc = Acc::<B>::default();
                    for g in 0..3 {
                        for k in 0..3 {
                            acc.add(f.get(3 * g + k, 3 * j + be), &[u(al, g), t(i, k)]);
                            acc.add(&f.get(3 * al + i, 3 * k + g).neg(), &[t(k, j), u(g, be)]);
                        }
                    }
                    alt.push(acc.finish("(u,t)F=F(t,u)", &[al, i, j, be]));
                }
            }
        }
    }

    let (c, c_up, d, d_up) = (bqd.c(), bqd.C(), bqd.d(), bqd.D());
    let mut antipode = Vec::with_capacity(18);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Acc::<B>::default();
            for al in 0..3 {
                for be in 0..3 {
                    acc.add(&c.get(3 * i + al, 0).mul(c_up.get(0, 3 * be + j)), &[u(be, al)]);
                }
            }
            antipode.push(acc.finish("S", &[]).terms);
        }
    }
    for al in 0..3 {
        for be in 0..3 {
            let mut acc = Acc::<B>::default();
            for i in 0..3 {
                for j in 0..3 {
                    acc.add(&d.get(3 * al + i, 0).mul(d_up.get(0, 3 * j + be)), &[t(j, i)]);
                }
            }
            antipode.push(acc.finish("S", &[]).terms);
        }
    }

    Ok(PresentationDoc { name: bqd.name().to_string(), relations, alt_relations: alt, antipode })
}

fn word_name(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|&g| Generator::from_index(g).name()).collect::<Vec<_>>().join(" ")
}

fn terms_json<B: BaseField>(terms: &[Term<B>]) -> Value {
    Value::Array(
        terms.iter().map(|t| json!({ "coef": t.coef.to_string(), "word": word_name(&t.word) })).collect(),
    )
}

fn relations_json<B: BaseField>(rels: &[Relation<B>]) -> Value {
    Value::Array(
        rels.iter()
            .map(|r| json!({ "family": r.family, "index": r.index, "terms": terms_json(&r.terms) }))
            .collect(),
    )
}

impl<B: BaseField> PresentationDoc<B> {
    pub fn to_json(&self) -> Value {
        let gens: Vec<String> = (0..18).map(|g| Generator::from_index(g).name()).collect();
        let counit: Vec<Value> = (0..18)
            .map(|g| {
                let (i, j) = match Generator::from_index(g) {
                    Generator::T(i, j) | Generator::U(i, j) => (i, j),
                };
                json!({ "generator": gens[g], "value": if i == j { "1" } else { "0" } })
            })
            .collect();
        let coproduct: Vec<Value> = (0..18)
            .map(|g| {
                let (i, j, mk): (usize, usize, fn(usize, usize) -> Generator) = match Generator::from_index(g) {
                    Generator::T(i, j) => (i, j, Generator::T),
                    Generator::U(i, j) => (i, j, Generator::U),
                };
                let terms: Vec<String> =
                    (0..3).map(|k| format!("{} ⊗ {}", mk(i, k).name(), mk(k, j).name())).collect();
                json!({ "generator": gens[g], "value": terms })
            })
            .collect();
        let antipode: Vec<Value> = self
            .antipode
            .iter()
            .enumerate()
            .map(|(g, ts)| json!({ "generator": gens[g], "value": terms_json(ts) }))
            .collect();
        json!({
            "name": self.name,
            "generators": gens,
            "relation_count": self.relations.len(),
            "relations": relations_json(&self.relations),
            "alt_relation_count": self.alt_relations.len(),
            "alt_relations": relations_json(&self.alt_relations),
            "counit": counit,
            "coproduct": coproduct,
            "antipode": antipode,
        })
    }
}

/// Whether the span of the relations is stable under reversing every
/// quadratic word, `xy ↦ yx`.
pub fn reversal_invariant<B: BaseField>(rels: &[Relation<B>]) -> bool {
    let mut cols: HashMap<Vec<usize>, usize> = HashMap::new();
    for r in rels {
        for t in &r.terms {
            for w in [t.word.clone(), t.word.iter().rev().copied().collect()] {
                let n = cols.len();
                cols.entry(w).or_insert(n);
            }
        }
    }
    let n = cols.len();
    let vec_of = |r: &Relation<B>, rev: bool| {
        let mut v = vec![K::<B>::zero(); n];
        for t in &r.terms {
            let w: Vec<usize> = if rev { t.word.iter().rev().copied().collect() } else { t.word.clone() };
            let j = cols[&w];
            v[j] = v[j].add(&t.coef);
        }
        v
    };
    let base: Vec<Vec<K<B>>> = rels.iter().map(|r| vec_of(r, false)).collect();
    let both: Vec<Vec<K<B>>> = base.iter().cloned().chain(rels.iter().map(|r| vec_of(r, true))).collect();
    row_space_rank(n, base) == row_space_rank(n, both)
}
