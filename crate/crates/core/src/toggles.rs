//! Toggles on ideals and antichains, Coxeter words, base graphs and the
//! conjugation moves between Coxeter words.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FenceError, Result};
use crate::fence::{ElementSet, Fence};
use crate::rowmotion::{cycle_decomposition, family_masks, Family};
use crate::stats::{mesy_report, Atom, MesyReport, OrbitTally, StatExpr};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_F3AC_E000_0001;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `τ_x` on a mask of the given family.
pub fn toggle_bits(f: &Fence, family: Family, x: usize, bits: u64) -> u64 {
    let bit = 1u64 << x;
    let stays = match family {
        Family::Ideals => {
            if bits & bit != 0 {
                f.upper_covers(x) & bits == 0
            } else {
                f.lower_covers(x) & !bits == 0
            }
        }
        Family::Antichains => bits & bit != 0 || f.comparable_mask(x) & bits == 0,
    };
    if stays {
        bits ^ bit
    } else {
        bits
    }
}

/// `τ_x` on a typed set.
pub fn toggle(f: &Fence, family: Family, x: usize, set: &ElementSet) -> Result<ElementSet> {
    set.expect_kind(family.kind())?;
    if x >= f.len() {
        return Err(FenceError::ElementOutOfRange {
            index: x + 1,
            n: f.len(),
        });
    }
    Ok(ElementSet::from_bits(
        toggle_bits(f, family, x, set.bits()),
        family.kind(),
    ))
}

/// A product of toggles written left to right and applied right to left.
/// Coxeter words use every element exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ToggleWord {
    pub family: Family,
    /// 0-based elements in written order.
    pub order: Vec<usize>,
}

impl ToggleWord {
    /// A Coxeter word; `order` must be a permutation of `0..n`.
    pub fn coxeter(family: Family, n: usize, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &x in &order {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(FenceError::InvalidWord(format!(
                    "{} is not a permutation of 1..{n}",
                    fmt_order(&order)
                )));
            }
        }
        if order.len() != n {
            return Err(FenceError::InvalidWord(format!(
                "{} uses {} of {n} elements",
                fmt_order(&order),
                order.len()
            )));
        }
        Ok(ToggleWord { family, order })
    }

    /// Parses `1,5,2,4,3` (1-based, leftmost applied last).
    pub fn parse(family: Family, n: usize, text: &str) -> Result<Self> {
        let order = crate::fence::parse_element_list(text)
            .map_err(|e| FenceError::InvalidWord(e.to_string()))?;
        ToggleWord::coxeter(family, n, order)
    }

    /// Position of each element in the written word.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &x) in self.order.iter().enumerate() {
            pos[x] = k;
        }
        pos
    }

    pub fn reversed(&self) -> ToggleWord {
        let mut order = self.order.clone();
        order.reverse();
        ToggleWord {
            family: self.family,
            order,
        }
    }
}

fn fmt_order(order: &[usize]) -> String {
    order
        .iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for ToggleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_order(&self.order))
    }
}

pub fn apply_word_bits(f: &Fence, w: &ToggleWord, bits: u64) -> u64 {
    w.order
        .iter()
        .rev()
        .fold(bits, |acc, &x| toggle_bits(f, w.family, x, acc))
}

pub fn apply_word(f: &Fence, w: &ToggleWord, set: &ElementSet) -> Result<ElementSet> {
    set.expect_kind(w.family.kind())?;
    Ok(ElementSet::from_bits(
        apply_word_bits(f, w, set.bits()),
        w.family.kind(),
    ))
}

/// Orbits of the group generated by `w`, as cycles of masks.
pub fn word_orbits(f: &Fence, w: &ToggleWord, cap: usize) -> Result<Vec<Vec<u64>>> {
    let domain = family_masks(f, w.family, cap)?;
    cycle_decomposition(&domain, |b| apply_word_bits(f, w, b))
}

/// Vertices are elements; `{x, y}` is an edge when `τ_x` and `τ_y` fail to
/// commute somewhere on the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseGraph {
    pub family: Family,
    pub vertices: usize,
    /// Pairs `(x, y)` with `x < y`, 0-based.
    pub edges: BTreeSet<(usize, usize)>,
}

impl BaseGraph {
    pub fn neighbours(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    /// Whether the graph is a forest.
    pub fn is_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Edges printed 1-based as `x-y`.
    pub fn edge_labels(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }
}

/// Computes edges by testing `τ_xτ_y = τ_yτ_x` on every member of the
/// family. For ideals, an edge between non-covering elements would
/// contradict the structure theorem and is reported as an error.
pub fn base_graph(f: &Fence, family: Family, cap: usize) -> Result<BaseGraph> {
    let domain = family_masks(f, family, cap)?;
    let n = f.len();
    let mut edges = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            let clash = domain.iter().any(|&s| {
                toggle_bits(f, family, x, toggle_bits(f, family, y, s))
                    != toggle_bits(f, family, y, toggle_bits(f, family, x, s))
            });
            if clash {
                edges.insert((x, y));
            }
        }
    }
    if family == Family::Ideals {
        if let Some(&(x, y)) = edges
            .iter()
            .find(|&&(x, y)| (f.upper_covers(x) | f.lower_covers(x)) >> y & 1 == 0)
        {
            return Err(FenceError::Internal(format!(
                "ideal toggles of x{} and x{} fail to commute but neither covers the other",
                x + 1,
                y + 1
            )));
        }
    }
    Ok(BaseGraph {
        family,
        vertices: n,
        edges,
    })
}

/// Sources and sinks of the orientation that `w` induces on `g`.
pub fn admissible(w: &ToggleWord, g: &BaseGraph) -> BTreeSet<usize> {
    let pos = w.positions();
    (0..g.vertices)
        .filter(|&x| {
            let mut nb = g.neighbours(x);
            let all_right = g.neighbours(x).all(|y| pos[y] > pos[x]);
            all_right || nb.all(|y| pos[y] < pos[x])
        })
        .collect()
}

/// `τ_x w τ_x` as a Coxeter word. When everything left of `x` commutes with
/// it, `x` moves to the right end; otherwise to the left end.
pub fn conjugate(w: &ToggleWord, x: usize, g: &BaseGraph) -> Result<ToggleWord> {
    let pos = w.positions();
    if x >= pos.len() {
        return Err(FenceError::ElementOutOfRange {
            index: x + 1,
            n: pos.len(),
        });
    }
    let source = g.neighbours(x).all(|y| pos[y] > pos[x]);
    let sink = g.neighbours(x).all(|y| pos[y] < pos[x]);
    if !source && !sink {
        return Err(FenceError::NotAdmissible(x));
    }
    let mut order: Vec<usize> = w.order.iter().copied().filter(|&y| y != x).collect();
    if source {
        order.push(x);
    } else {
        order.insert(0, x);
    }
    Ok(ToggleWord {
        family: w.family,
        order,
    })
}

/// The orientation `O(w)`: for each edge in order, whether it points from
/// the smaller element to the larger.
pub fn orientation(w: &ToggleWord, g: &BaseGraph) -> Vec<bool> {
    let pos = w.positions();
    g.edges.iter().map(|&(a, b)| pos[a] < pos[b]).collect()
}

/// Default cap on orientations visited by [`conjugation_path`].
pub const DEFAULT_PATH_CAP: usize = 1 << 20;

/// A shortest sequence of admissible conjugations turning `O(w)` into
/// `O(w2)`, found by breadth-first search over orientations.
pub fn conjugation_path(
    w: &ToggleWord,
    w2: &ToggleWord,
    g: &BaseGraph,
    cap: usize,
) -> Result<Vec<usize>> {
    if !g.is_acyclic() {
        return Err(FenceError::CyclicBaseGraph);
    }
    if w.family != w2.family || w.order.len() != w2.order.len() {
        return Err(FenceError::InvalidWord(
            "words act on different families or sizes".into(),
        ));
    }
    let target = orientation(w2, g);
    let start = orientation(w, g);
    let mut parent: HashMap<Vec<bool>, Option<(Vec<bool>, usize)>> = HashMap::new();
    let mut words: HashMap<Vec<bool>, ToggleWord> = HashMap::new();
    parent.insert(start.clone(), None);
    words.insert(start.clone(), w.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some(Some((prev, x))) = parent.get(&at).cloned() {
                path.push(x);
                at = prev;
            }
            path.reverse();
            return Ok(path);
        }
        let word = words[&cur].clone();
        for x in admissible(&word, g) {
            let next_word = conjugate(&word, x, g)?;
            let next = orientation(&next_word, g);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= cap {
                return Err(FenceError::CapExceeded {
                    what: "orientation search".into(),
                    cap,
                });
            }
            parent.insert(next.clone(), Some((cur.clone(), x)));
            words.insert(next.clone(), next_word);
            queue.push_back(next);
        }
    }
    Err(FenceError::Internal(
        "no conjugation path between the two orientations".into(),
    ))
}

/// A linear extension built by repeatedly taking a random minimal element.
pub fn random_linear_extension<R: Rng>(f: &Fence, rng: &mut R) -> Vec<usize> {
    let n = f.len();
    let mut placed = 0u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let ready: Vec<usize> = (0..n)
            .filter(|&x| placed >> x & 1 == 0 && f.lower_covers(x) & !placed == 0)
            .collect();
        let &x = ready.choose(rng).expect("a finite poset has a minimal element");
        placed |= 1 << x;
        out.push(x);
    }
    out
}

pub fn random_coxeter_word<R: Rng>(family: Family, n: usize, rng: &mut R) -> ToggleWord {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    ToggleWord { family, order }
}

/// All single indicators of the family plus the cardinality.
pub fn battery(n: usize, family: Family) -> Vec<StatExpr> {
    let (single, card): (fn(usize) -> Atom, Atom) = match family {
        Family::Antichains => (Atom::Chi, Atom::Card),
        Family::Ideals => (Atom::ChiHat, Atom::CardHat),
    };
    (0..n)
        .map(|x| StatExpr::atom(single(x)))
        .chain(std::iter::once(StatExpr::atom(card)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatComparison {
    pub stat: String,
    pub first: MesyReport,
    pub second: MesyReport,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub family: Family,
    pub first: String,
    pub second: String,
    pub agree: bool,
    pub comparisons: Vec<StatComparison>,
}

fn verdicts_agree(a: &MesyReport, b: &MesyReport) -> bool {
    a.constant() == b.constant() && a.orbomesic == b.orbomesic
}

fn reports(f: &Fence, w: &ToggleWord, stats: &[StatExpr], cap: usize) -> Result<Vec<MesyReport>> {
    let cycles = word_orbits(f, w, cap)?;
    let tallies: Vec<OrbitTally> = cycles
        .iter()
        .map(|c| OrbitTally::new(w.family, f.len(), c.iter().copied()))
        .collect();
    stats
        .iter()
        .map(|e| {
            let sums = tallies
                .iter()
                .map(|t| Ok((t.size, t.evaluate(e)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(mesy_report(sums))
        })
        .collect()
}

/// Compares the homomesy constant and orbomesy verdict of each statistic
/// under the groups generated by `w` and `w2`.
pub fn transfer_check(
    f: &Fence,
    w: &ToggleWord,
    w2: &ToggleWord,
    stats: &[StatExpr],
    cap: usize,
) -> Result<TransferReport> {
    if w.family != w2.family {
        return Err(FenceError::InvalidWord("words act on different families".into()));
    }
    let first = reports(f, w, stats, cap)?;
    let second = reports(f, w2, stats, cap)?;
    let comparisons: Vec<StatComparison> = stats
        .iter()
        .zip(first.into_iter().zip(second))
        .map(|(e, (a, b))| StatComparison {
            stat: e.to_string(),
            agree: verdicts_agree(&a, &b),
            first: a,
            second: b,
        })
        .collect();
    Ok(TransferReport {
        family: w.family,
        first: w.to_string(),
        second: w2.to_string(),
        agree: comparisons.iter().all(|c| c.agree),
        comparisons,
    })
}
