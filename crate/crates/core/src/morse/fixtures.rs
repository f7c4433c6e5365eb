//! The explicit fiber assignments for `N(G_n)` and `N(G_n')`.
//!
//! Each fiber is described by the sets it draws from (`NP(v)`: nonempty
//! faces inside `N(v)`), explicit faces, and explicit removals. Fibers are
//! filled in the listed order and a face goes to the first fiber whose
//! description contains it; the number of faces that more than one
//! description contains is reported as `overlaps`.

use crate::complex::neighborhood_complex;
use crate::constructions::{build_gn, build_gn_prime};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{dim, patchwork_union, Cell, CriticalCells, FacePoset, PartialMatching, PosetMapFibers, TargetPoset};

/// A face poset with a fiber assignment and fiber matchings.
#[derive(Clone, Debug)]
pub struct MorseFixture {
    pub poset: FacePoset,
    pub fibers: PosetMapFibers,
    /// Label whose fiber stays unmatched (the contractible part).
    pub base: usize,
    /// Faces contained in more than one fiber description.
    pub overlaps: usize,
}

impl MorseFixture {
    pub fn matching(&self) -> Result<PartialMatching> {
        patchwork_union(&self.poset, &self.fibers)
    }

    /// Critical cells outside the base fiber, by dimension.
    pub fn critical_outside_base(&self, critical: &CriticalCells) -> Vec<usize> {
        let mut counts = vec![0; critical.counts.len()];
        for &c in &critical.cells {
            let i = self.poset.index_of(c).expect("critical cell is a face");
            if self.fibers.assignment[i] != self.base {
                counts[dim(c)] += 1;
            }
        }
        counts
    }

    /// Faces of the base fiber as vertex lists.
    pub fn base_faces(&self) -> Vec<Vec<u32>> {
        self.fibers.fiber(&self.poset, self.base).into_iter().map(|c| self.poset.vertices(c)).collect()
    }
}

#[derive(Default)]
struct FiberDef {
    label: String,
    pivot: Option<Cell>,
    within: Vec<Cell>,
    explicit: Vec<Cell>,
    remove: Vec<Cell>,
}

impl FiberDef {
    fn contains(&self, c: Cell) -> bool {
        (self.within.iter().any(|&m| c & !m == 0) || self.explicit.contains(&c)) && !self.remove.contains(&c)
    }
}

struct Names<'a> {
    g: &'a Graph,
    p: &'a FacePoset,
}

impl Names<'_> {
    fn bit(&self, name: &str) -> Option<Cell> {
        self.p.bit(self.g.vertex_named(name)?.0)
    }

    /// `N(v)` as a mask.
    fn nbhd(&self, name: &str) -> Cell {
        let v = self.g.vertex_named(name).unwrap_or_else(|| panic!("no vertex {name}"));
        self.g.neighbors(v).unwrap().iter().fold(0, |m, u| m | self.p.bit(u.0).unwrap())
    }

    /// Mask of a set of named vertices; `None` when a name does not exist.
    fn set(&self, names: &[String]) -> Option<Cell> {
        names.iter().try_fold(0, |m, s| Some(m | self.bit(s)?))
    }

    fn sets(&self, lists: &[Vec<String>]) -> Vec<Cell> {
        lists.iter().filter_map(|l| self.set(l)).collect()
    }
}

fn s(items: &[&str]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn lbl(i: usize, part: char) -> String {
    format!("{i}{part}")
}

fn assemble(g: &Graph, defs: &dyn Fn(&Names) -> Vec<FiberDef>, target: TargetPoset) -> Result<MorseFixture> {
    let poset = FacePoset::from_complex(&neighborhood_complex(g))?;
    let names = Names { g, p: &poset };
    let defs = defs(&names);
    let mut assignment = Vec::with_capacity(poset.len());
    let mut overlaps = 0;
    let mut unassigned = Vec::new();
    let label_of: Vec<usize> = defs
        .iter()
        .map(|d| target.label_index(&d.label).ok_or_else(|| Error::spec(format!("no target element {}", d.label))))
        .collect::<Result<_>>()?;
    for &c in poset.faces() {
        let mut hits = defs.iter().enumerate().filter(|(_, d)| d.contains(c)).map(|(i, _)| i);
        match hits.next() {
            Some(first) => {
                if hits.next().is_some() {
                    overlaps += 1;
                }
                assignment.push(label_of[first]);
            }
            None => {
                unassigned.push(c);
                assignment.push(usize::MAX);
            }
        }
    }
    if let Some(&c) = unassigned.first() {
        let shown: Vec<String> = poset.vertices(c).iter().map(|v| g.display_name(crate::graph::Vertex(*v))).collect();
        return Err(Error::spec(format!("{} faces are in no fiber, e.g. {{{}}}", unassigned.len(), shown.join(","))));
    }
    let mut matchings = vec![PartialMatching::default(); target.len()];
    for (d, &label) in defs.iter().zip(&label_of) {
        let Some(t) = d.pivot else { continue };
        for (i, &c) in poset.faces().iter().enumerate() {
            if assignment[i] != label || c & t != 0 {
                continue;
            }
            if let Some(j) = poset.index_of(c | t) {
                if assignment[j] == label {
                    matchings[label].pairs.push((c, c | t));
                }
            }
        }
    }
    let base = label_of[0];
    Ok(MorseFixture { poset, fibers: PosetMapFibers { target, assignment, matchings }, base, overlaps })
}

/// The fibers over `Q_n` for `N(G_n)`, `n >= 5`. The base fiber is
/// `NP(X) ∪ NP(Z)`.
pub fn build_prop48_matching(n: usize) -> Result<MorseFixture> {
    if n < 5 {
        return Err(Error::spec("the matching on N(G_n) needs n >= 5"));
    }
    let g = build_gn(n)?;

    let mut labels = vec!["O".to_string(), "X".to_string()];
    labels.extend((2..n).map(|k| format!("Z{k}")));
    labels.extend((1..n).map(|i| lbl(i, 'A')));
    labels.extend((2..=n).map(|i| lbl(i, 'C')));
    let at = |l: &str| labels.iter().position(|x| x == l).unwrap();
    let mut covers = vec![];
    let chain = ["O", "1A", "2A", "Z2", "2C", "Z3", "3A"];
    covers.extend(chain.windows(2).map(|w| (at(w[0]), at(w[1]))));
    covers.push((at("2A"), at("X")));
    let mut cs: Vec<String> = (2..=n - 2).map(|j| lbl(j, 'C')).collect();
    cs.push(lbl(n, 'C'));
    cs.push(lbl(n - 1, 'C'));
    covers.extend(cs.windows(2).map(|w| (at(&w[0]), at(&w[1]))));
    for j in 3..=n - 2 {
        let z = format!("Z{}", j + 1);
        covers.push((at(&lbl(j, 'A')), at(&z)));
        covers.push((at(&z), at(&lbl(j + 1, 'A'))));
        covers.push((at(&lbl(j, 'C')), at(&z)));
    }
    let target = TargetPoset::new(labels.clone(), covers)?;

    let defs = move |nm: &Names| -> Vec<FiberDef> {
        let np = |v: &str| nm.nbhd(v);
        let b = |v: &str| nm.bit(v);
        let sets = |l: &[&[&str]]| nm.sets(&l.iter().map(|x| s(x)).collect::<Vec<_>>());
        let (na, nb, nc) = (lbl(n, 'A'), lbl(n, 'B'), lbl(n, 'C'));
        let pc = lbl(n - 1, 'C');
        let mut defs = vec![
            FiberDef { label: "O".into(), within: vec![np("X"), np("Z")], ..Default::default() },
            FiberDef {
                label: "1A".into(),
                pivot: b("1A"),
                explicit: sets(&[&["1A", "1B", "2A"], &["1A", "2A"], &["1B", "2A"]]),
                ..Default::default()
            },
            FiberDef {
                label: "2A".into(),
                pivot: b("2A"),
                within: vec![np("Y"), np("1C"), np("2C"), np("2B")],
                remove: sets(&[
                    &["1A", "1B", "2A"],
                    &["1A", "2A"],
                    &["1B", "2A"],
                    &["1A", "1B"],
                    &["2A", "3A"],
                    &["1A"],
                    &["1B"],
                    &["2A"],
                    &["2B"],
                    &["2C"],
                    &["3A"],
                ]),
                ..Default::default()
            },
            FiberDef { label: "X".into(), pivot: b("X"), within: vec![np("1B"), np("1A"), np(&nb), np(&nc)], ..Default::default() },
            FiberDef {
                label: "Z2".into(),
                pivot: b("Z"),
                explicit: sets(&[&["2B", "2C", "Z"], &["2B", "2C"], &["2C", "Z"]]),
                ..Default::default()
            },
            FiberDef {
                label: "2C".into(),
                pivot: b("2C"),
                within: vec![np("2A"), np("3A")],
                remove: sets(&[&["2B", "2C", "Z"], &["2B", "2C"], &["2B", "Z"], &["1C", "2C"], &["2C", "3C"], &["2C", "Z"]]),
                ..Default::default()
            },
        ];
        for j in 3..=n - 2 {
            let (jc, ja1, jc1) = (lbl(j, 'C'), lbl(j + 1, 'A'), lbl(j + 1, 'C'));
            defs.push(FiberDef {
                label: jc.clone(),
                pivot: b(&jc),
                within: vec![np(&ja1)],
                remove: nm.sets(&[s(&[&jc, "Z"]), s(&[&jc, &jc1])]),
                ..Default::default()
            });
        }
        for k in 3..n {
            let (ka, kb) = (lbl(k, 'A'), lbl(k, 'B'));
            defs.push(FiberDef {
                label: format!("Z{k}"),
                pivot: b("Z"),
                explicit: nm.sets(&[s(&[&ka, &kb, "Z"]), s(&[&ka, &kb])]),
                ..Default::default()
            });
        }
        for k in 3..n {
            let (ka, kb, kc, ka1) = (lbl(k, 'A'), lbl(k, 'B'), lbl(k, 'C'), lbl(k + 1, 'A'));
            defs.push(FiberDef {
                label: ka.clone(),
                pivot: b(&ka),
                within: vec![np(&kc), np(&kb)],
                remove: nm.sets(&[s(&[&ka, &kb, "Z"]), s(&[&ka, &kb]), s(&[&kb, "Z"]), s(&[&ka, "Z"]), s(&[&ka, &ka1])]),
                ..Default::default()
            });
        }
        defs.push(FiberDef {
            label: nc.clone(),
            pivot: b(&nc),
            explicit: nm.sets(&[s(&[&pc, &nb, &nc]), s(&[&pc, &nc]), s(&[&pc, &nb])]),
            ..Default::default()
        });
        defs.push(FiberDef {
            label: pc.clone(),
            pivot: b(&pc),
            within: vec![np(&na)],
            remove: nm.sets(&[s(&[&pc, &nb, &nc]), s(&[&pc, &nb]), s(&[&pc, &nc]), s(&[&pc, "Z"]), s(&[&nb, &nc])]),
            ..Default::default()
        });
        defs
    };
    assemble(&g, &defs, target)
}

/// The fibers over the chain `O' < 2A < 2C < 3A < 3C < ... < nA < nC < T`
/// for `N(G_n')`, `n >= 5`. The base fiber is `NP(XZ)`.
pub fn build_prop49_matching(n: usize) -> Result<MorseFixture> {
    if n < 5 {
        return Err(Error::spec("the matching on N(G_n') needs n >= 5"));
    }
    let g = build_gn_prime(n)?;
    let mut labels = vec!["O'".to_string()];
    for k in 2..=n {
        labels.push(lbl(k, 'A'));
        labels.push(lbl(k, 'C'));
    }
    labels.push("T".into());
    let target = TargetPoset::chain(labels)?;

    let defs = move |nm: &Names| -> Vec<FiberDef> {
        let np = |v: &str| nm.nbhd(v);
        let b = |v: &str| nm.bit(v);
        let xz = b("XZ").expect("merged vertex");
        let not_xz = |m: Cell| m & !xz;
        let sets = |l: &[&[&str]]| nm.sets(&l.iter().map(|x| s(x)).collect::<Vec<_>>());
        let mut defs = vec![
            FiberDef { label: "O'".into(), within: vec![not_xz(u128::MAX)], ..Default::default() },
            FiberDef { label: "2A".into(), pivot: b("2A"), within: vec![np("1C"), np("2B"), np("2C")], ..Default::default() },
            FiberDef {
                label: "2C".into(),
                pivot: b("2C"),
                explicit: sets(&[
                    &["1C", "2B", "2C", "XZ"],
                    &["2C", "3B", "3C", "XZ"],
                    &["1A", "1C", "XZ"],
                    &["1B", "1C", "XZ"],
                    &["1C", "2B", "XZ"],
                    &["2C", "3C", "XZ"],
                    &["2B", "2C", "XZ"],
                    &["2C", "3B", "XZ"],
                    &["3B", "3C", "XZ"],
                    &["3A", "3C", "XZ"],
                    &["1C", "2C", "XZ"],
                    &["1C", "XZ"],
                    &["3B", "XZ"],
                    &["3C", "XZ"],
                ]),
                ..Default::default()
            },
        ];
        for k in 3..=n {
            let (ka, kb, kc) = (lbl(k, 'A'), lbl(k, 'B'), lbl(k, 'C'));
            let (ka1, kb1, kc1) = (lbl(k + 1, 'A'), lbl(k + 1, 'B'), lbl(k + 1, 'C'));
            // sets naming a vertex of index n + 1 do not exist and are dropped
            defs.push(FiberDef {
                label: ka.clone(),
                pivot: b(&ka),
                explicit: nm.sets(&[
                    s(&[&ka, &kb, &ka1, "XZ"]),
                    s(&[&kb, &ka1, "XZ"]),
                    s(&[&ka, &ka1, "XZ"]),
                    s(&[&ka1, "XZ"]),
                    s(&[&ka, &kb, "XZ"]),
                ]),
                ..Default::default()
            });
            defs.push(FiberDef {
                label: kc.clone(),
                pivot: b(&kc),
                explicit: nm.sets(&[
                    s(&[&kc, &kb1, &kc1, "XZ"]),
                    s(&[&kb1, &kc1, "XZ"]),
                    s(&[&kc, &kc1, "XZ"]),
                    s(&[&kc, &kb1, "XZ"]),
                    s(&[&kb1, "XZ"]),
                    s(&[&kc1, "XZ"]),
                ]),
                ..Default::default()
            });
        }
        defs.push(FiberDef {
            label: "T".into(),
            explicit: nm.sets(&(4..=n).map(|k| s(&[&lbl(k, 'A'), &lbl(k, 'C'), "XZ"])).collect::<Vec<_>>()),
            ..Default::default()
        });
        defs
    };
    assemble(&g, &defs, target)
}
