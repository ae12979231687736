use std::collections::HashMap;

use crate::report::{Axiom, ValidationReport};

pub type ObjId = usize;
pub type ArrId = usize;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
    pub is_identity: bool,
}

/// A finite category stored as an arrow table plus a dense composition table.
///
/// The composition table has one slot per composable pair `(g, f)` (that is,
/// `tgt(f) == src(g)`); the slot for `(g, f)` lives at
/// `pair_offset[g] + in_pos[f]`, where `in_pos[f]` is the position of `f` in the
/// incoming list of its target. Slots may be empty, which only happens for
/// hand-assembled tables that fail [`FinCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrId>,
    incoming: Vec<Vec<ArrId>>,
    outgoing: Vec<Vec<ArrId>>,
    in_pos: Vec<u32>,
    pair_offset: Vec<usize>,
    comp: Vec<u32>,
}

impl FinCategory {
    /// Assembles the indices and fills the composition table by calling
    /// `composite(g, f)` once per composable pair.
    pub(crate) fn assemble(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        mut composite: impl FnMut(ArrId, ArrId) -> Option<ArrId>,
    ) -> FinCategory {
        let n = objects.len();
        let mut identities = vec![usize::MAX; n];
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        let mut in_pos = vec![0u32; arrows.len()];
        for (id, a) in arrows.iter().enumerate() {
            if a.is_identity && a.src == a.tgt && identities[a.src] == usize::MAX {
                identities[a.src] = id;
            }
            in_pos[id] = incoming[a.tgt].len() as u32;
            incoming[a.tgt].push(id);
            outgoing[a.src].push(id);
        }
        let mut pair_offset = Vec::with_capacity(arrows.len());
        let mut total = 0usize;
        for a in &arrows {
            pair_offset.push(total);
            total += incoming[a.src].len();
        }
        let mut comp = vec![NONE; total];
        for (g, a) in arrows.iter().enumerate() {
            for (k, &f) in incoming[a.src].iter().enumerate() {
                if let Some(gf) = composite(g, f) {
                    comp[pair_offset[g] + k] = gf as u32;
                }
            }
        }
        FinCategory {
            objects,
            arrows,
            identities,
            incoming,
            outgoing,
            in_pos,
            pair_offset,
            comp,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn object_name(&self, c: ObjId) -> &str {
        &self.objects[c]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: ArrId) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_name(&self, f: ArrId) -> &str {
        &self.arrows[f].name
    }

    pub fn src(&self, f: ArrId) -> ObjId {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: ArrId) -> ObjId {
        self.arrows[f].tgt
    }

    pub fn is_identity(&self, f: ArrId) -> bool {
        self.arrows[f].is_identity
    }

    /// The identity arrow of `c`. Panics on tables without one; such tables are
    /// reported by [`FinCategory::validate`].
    pub fn identity(&self, c: ObjId) -> ArrId {
        let id = self.identities[c];
        assert!(id != usize::MAX, "object {} has no identity", self.objects[c]);
        id
    }

    pub fn incoming(&self, c: ObjId) -> &[ArrId] {
        &self.incoming[c]
    }

    pub fn outgoing(&self, c: ObjId) -> &[ArrId] {
        &self.outgoing[c]
    }

    pub fn hom(&self, c: ObjId, d: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        self.outgoing[c]
            .iter()
            .copied()
            .filter(move |&f| self.arrows[f].tgt == d)
    }

    pub fn hom_vec(&self, c: ObjId, d: ObjId) -> Vec<ArrId> {
        self.hom(c, d).collect()
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = ArrId> + '_ {
        (0..self.arrows.len()).filter(move |&f| !self.arrows[f].is_identity)
    }

    /// Dense index of the composable pair `(g, f)`, if composable.
    pub fn pair_index(&self, g: ArrId, f: ArrId) -> Option<usize> {
        if self.arrows[f].tgt != self.arrows[g].src {
            return None;
        }
        Some(self.pair_offset[g] + self.in_pos[f] as usize)
    }

    pub fn num_pairs(&self) -> usize {
        self.comp.len()
    }

    /// All composable pairs `(g, f)` in dense-index order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrId, ArrId)> + '_ {
        (0..self.arrows.len()).flat_map(move |g| self.incoming[self.arrows[g].src].iter().map(move |&f| (g, f)))
    }

    pub fn try_compose(&self, g: ArrId, f: ArrId) -> Option<ArrId> {
        let idx = self.pair_index(g, f)?;
        let v = self.comp[idx];
        (v != NONE).then_some(v as usize)
    }

    /// `g ∘ f`. Panics when the pair is not composable or the slot is empty.
    pub fn compose(&self, g: ArrId, f: ArrId) -> ArrId {
        match self.try_compose(g, f) {
            Some(gf) => gf,
            None => panic!("no composite for {} ∘ {}", self.arrows[g].name, self.arrows[f].name),
        }
    }

    /// Composite of a path given source-first; an empty path composes to the identity of `start`.
    pub fn compose_path(&self, start: ObjId, path: &[ArrId]) -> ArrId {
        path.iter().fold(self.identity(start), |acc, &f| self.compose(f, acc))
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_discrete(&self) -> bool {
        self.arrows.iter().all(|a| a.is_identity)
    }

    /// Lists every violated category axiom; empty iff the table is a category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let mut id_count = vec![0usize; self.objects.len()];
        for a in &self.arrows {
            if a.is_identity {
                if a.src != a.tgt {
                    report.push(
                        Axiom::Identity,
                        vec![a.name.clone()],
                        "identity-flagged arrow is not an endomorphism",
                    );
                } else {
                    id_count[a.src] += 1;
                }
            }
        }
        for (c, &k) in id_count.iter().enumerate() {
            if k != 1 {
                report.push(
                    Axiom::Identity,
                    vec![self.objects[c].clone()],
                    format!("object has {k} identity arrows"),
                );
            }
        }
        let mut typed_ok = true;
        for (g, f) in self.composable_pairs() {
            match self.try_compose(g, f) {
                None => {
                    typed_ok = false;
                    report.push(
                        Axiom::Totality,
                        vec![self.arrows[g].name.clone(), self.arrows[f].name.clone()],
                        "missing composite",
                    );
                }
                Some(gf) => {
                    let a = &self.arrows[gf];
                    if a.src != self.arrows[f].src || a.tgt != self.arrows[g].tgt {
                        typed_ok = false;
                        report.push(
                            Axiom::Typing,
                            vec![self.arrows[g].name.clone(), self.arrows[f].name.clone(), a.name.clone()],
                            "composite has wrong source or target",
                        );
                    }
                }
            }
        }
        if !report.is_empty() && !typed_ok {
            return report;
        }
        if id_count.iter().all(|&k| k == 1) {
            for (f, a) in self.arrows.iter().enumerate() {
                let left = self.try_compose(self.identities[a.tgt], f);
                let right = self.try_compose(f, self.identities[a.src]);
                if left != Some(f) || right != Some(f) {
                    report.push(Axiom::IdentityLaw, vec![a.name.clone()], "id ∘ f = f = f ∘ id fails");
                }
            }
        }
        for (g, f) in self.composable_pairs() {
            let Some(gf) = self.try_compose(g, f) else { continue };
            for &h in &self.outgoing[self.arrows[g].tgt] {
                let (Some(h_gf), Some(hg)) = (self.try_compose(h, gf), self.try_compose(h, g)) else {
                    continue;
                };
                if self.try_compose(hg, f) != Some(h_gf) {
                    report.push(
                        Axiom::Associativity,
                        vec![
                            self.arrows[h].name.clone(),
                            self.arrows[g].name.clone(),
                            self.arrows[f].name.clone(),
                        ],
                        "h∘(g∘f) ≠ (h∘g)∘f",
                    );
                }
            }
        }
        report
    }

    /// Same arrow identifiers with source and target swapped.
    pub fn opposite(&self) -> FinCategory {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                src: a.tgt,
                tgt: a.src,
                is_identity: a.is_identity,
            })
            .collect();
        FinCategory::assemble(self.objects.clone(), arrows, |g, f| self.try_compose(f, g))
    }

    /// At most one arrow between any ordered pair and no two distinct objects
    /// connected in both directions.
    pub fn is_poset(&self) -> bool {
        for c in self.objects() {
            let mut seen = HashMap::new();
            for &f in &self.outgoing[c] {
                let d = self.arrows[f].tgt;
                if seen.insert(d, f).is_some() {
                    return false;
                }
            }
            for &d in seen.keys() {
                if d != c && self.hom(d, c).next().is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// A directed cycle through non-identity arrows (self-loops included), if any.
    pub fn find_cycle(&self) -> Option<Vec<ArrId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.objects.len();
        let mut mark = vec![Mark::New; n];
        let mut via: Vec<Option<ArrId>> = vec![None; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // iterative DFS: (object, next outgoing index)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(&mut (c, ref mut i)) = stack.last_mut() {
                if *i == self.outgoing[c].len() {
                    mark[c] = Mark::Done;
                    stack.pop();
                    continue;
                }
                let f = self.outgoing[c][*i];
                *i += 1;
                if self.arrows[f].is_identity {
                    continue;
                }
                let d = self.arrows[f].tgt;
                match mark[d] {
                    Mark::New => {
                        mark[d] = Mark::Active;
                        via[d] = Some(f);
                        stack.push((d, 0));
                    }
                    Mark::Active => {
                        let mut cycle = vec![f];
                        let mut cur = c;
                        while cur != d {
                            let e = via[cur].expect("active path");
                            cycle.push(e);
                            cur = self.arrows[e].src;
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    Mark::Done => {}
                }
            }
        }
        None
    }

    pub fn is_loop_free(&self) -> bool {
        self.find_cycle().is_none()
    }

    pub(crate) fn require_loop_free(&self) -> crate::Result<()> {
        match self.find_cycle() {
            None => Ok(()),
            Some(cycle) => Err(crate::Error::NotLoopFree {
                cycle: cycle.iter().map(|&f| self.arrows[f].name.clone()).collect(),
            }),
        }
    }

    /// Component index per object, components numbered by first appearance.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.src), find(&mut parent, a.tgt));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut comp = vec![0; n];
        let mut count = 0;
        for c in 0..n {
            let r = find(&mut parent, c);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            comp[c] = label[r];
        }
        (count, comp)
    }

    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let m = other.num_objects();
        let k = other.num_arrows();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|a| {
                other.arrows.iter().map(move |b| Arrow {
                    name: format!("({},{})", a.name, b.name),
                    src: a.src * m + b.src,
                    tgt: a.tgt * m + b.tgt,
                    is_identity: a.is_identity && b.is_identity,
                })
            })
            .collect();
        FinCategory::assemble(objects, arrows, |g, f| {
            let (g1, g2) = (g / k, g % k);
            let (f1, f2) = (f / k, f % k);
            Some(self.try_compose(g1, f1)? * k + other.try_compose(g2, f2)?)
        })
    }

    /// Full subcategory on `objs` (in the given order), with the arrow embedding.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> (FinCategory, Vec<ArrId>) {
        let mut local = vec![usize::MAX; self.objects.len()];
        for (i, &c) in objs.iter().enumerate() {
            local[c] = i;
        }
        let mut embed = Vec::new();
        let mut arrow_local = HashMap::new();
        let mut arrows = Vec::new();
        for &c in objs {
            for &f in &self.outgoing[c] {
                let a = &self.arrows[f];
                if local[a.tgt] != usize::MAX {
                    arrow_local.insert(f, arrows.len());
                    embed.push(f);
                    arrows.push(Arrow {
                        name: a.name.clone(),
                        src: local[a.src],
                        tgt: local[a.tgt],
                        is_identity: a.is_identity,
                    });
                }
            }
        }
        let names = objs.iter().map(|&c| self.objects[c].clone()).collect();
        let sub = FinCategory::assemble(names, arrows, |g, f| {
            let gf = self.try_compose(embed[g], embed[f])?;
            arrow_local.get(&gf).copied()
        });
        (sub, embed)
    }
}

/// Incremental construction of a [`FinCategory`]; every object receives an
/// identity arrow named `id_<object>` and identity composites are filled in
/// automatically unless set explicitly.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrId>,
    compose: HashMap<(ArrId, ArrId), ArrId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        let name = name.into();
        let id_name = format!("id_{name}");
        self.add_object_with_identity(name, id_name)
    }

    pub fn add_object_with_identity(&mut self, name: impl Into<String>, identity_name: impl Into<String>) -> ObjId {
        let c = self.objects.len();
        self.objects.push(name.into());
        self.identities.push(self.arrows.len());
        self.arrows.push(Arrow {
            name: identity_name.into(),
            src: c,
            tgt: c,
            is_identity: true,
        });
        c
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> ArrId {
        self.arrows.push(Arrow {
            name: name.into(),
            src,
            tgt,
            is_identity: false,
        });
        self.arrows.len() - 1
    }

    pub fn identity(&self, c: ObjId) -> ArrId {
        self.identities[c]
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, f: ArrId) -> &Arrow {
        &self.arrows[f]
    }

    /// Records `g ∘ f = gf`; later calls overwrite earlier ones.
    pub fn set_composite(&mut self, g: ArrId, f: ArrId, gf: ArrId) {
        self.compose.insert((g, f), gf);
    }

    pub fn composite(&self, g: ArrId, f: ArrId) -> Option<ArrId> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn build(self) -> FinCategory {
        let compose = self.compose;
        let arrows = self.arrows.clone();
        FinCategory::assemble(self.objects, self.arrows, |g, f| {
            compose
                .get(&(g, f))
                .copied()
                .or_else(|| identity_composite(&arrows, g, f))
        })
    }

    /// Like [`CategoryBuilder::build`], but asks `composite` for every
    /// composable pair not already recorded.
    pub fn build_with(self, mut composite: impl FnMut(ArrId, ArrId) -> Option<ArrId>) -> FinCategory {
        let compose = self.compose;
        let arrows = self.arrows.clone();
        FinCategory::assemble(self.objects, self.arrows, |g, f| {
            compose
                .get(&(g, f))
                .copied()
                .or_else(|| identity_composite(&arrows, g, f))
                .or_else(|| composite(g, f))
        })
    }
}

fn identity_composite(arrows: &[Arrow], g: ArrId, f: ArrId) -> Option<ArrId> {
    if arrows[g].is_identity {
        Some(f)
    } else if arrows[f].is_identity {
        Some(g)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{cyclic_group, fence, ordinal};

    #[test]
    fn ordinal_two_is_valid_and_counts() {
        let c = ordinal(2);
        assert!(c.validate().is_empty());
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_arrows(), 6);
    }

    #[test]
    fn associativity_violation_names_the_triple() {
        // a -f-> b -g-> c -h-> d, with two parallel arrows a -> d that the
        // table uses inconsistently.
        let mut b = CategoryBuilder::new();
        let (a, bb, c, d) = (
            b.add_object("a"),
            b.add_object("b"),
            b.add_object("c"),
            b.add_object("d"),
        );
        let f = b.add_arrow("f", a, bb);
        let g = b.add_arrow("g", bb, c);
        let h = b.add_arrow("h", c, d);
        let gf = b.add_arrow("gf", a, c);
        let hg = b.add_arrow("hg", bb, d);
        let p = b.add_arrow("p", a, d);
        let q = b.add_arrow("q", a, d);
        b.set_composite(g, f, gf);
        b.set_composite(h, g, hg);
        b.set_composite(h, gf, p);
        b.set_composite(hg, f, q);
        let cat = b.build();
        let report = cat.validate();
        assert_eq!(report.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.axiom, Axiom::Associativity);
        assert_eq!(v.witness, vec!["h", "g", "f"]);
    }

    #[test]
    fn missing_composite_is_a_totality_violation() {
        let mut b = CategoryBuilder::new();
        let (x, y, z) = (b.add_object("x"), b.add_object("y"), b.add_object("z"));
        b.add_arrow("f", x, y);
        b.add_arrow("g", y, z);
        let report = b.build().validate();
        assert!(report.has(Axiom::Totality));
        assert_eq!(report.violations[0].witness, vec!["g", "f"]);
    }

    #[test]
    fn overridden_identity_composite_is_reported() {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("x");
        let e = b.add_arrow("e", x, x);
        b.set_composite(e, e, e);
        let id = b.identity(x);
        b.set_composite(id, e, id);
        assert!(b.build().validate().has(Axiom::IdentityLaw));
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [ordinal(3), cyclic_group(3), fence()] {
            assert!(c.opposite().validate().is_empty());
            assert_eq!(c.opposite().opposite(), c);
        }
        let o = ordinal(1).opposite();
        let f = o.non_identity_arrows().next().unwrap();
        assert_eq!((o.src(f), o.tgt(f)), (1, 0));
    }

    #[test]
    fn poset_predicate() {
        assert!(ordinal(3).is_poset());
        assert!(!cyclic_group(2).is_poset());
        assert!(fence().is_poset());
        // two parallel arrows
        let mut b = CategoryBuilder::new();
        let (x, y) = (b.add_object("x"), b.add_object("y"));
        b.add_arrow("f", x, y);
        b.add_arrow("g", x, y);
        assert!(!b.build().is_poset());
    }

    #[test]
    fn cycles_are_found() {
        assert!(ordinal(3).is_loop_free());
        let z2 = cyclic_group(2);
        let cycle = z2.find_cycle().unwrap();
        assert_eq!(cycle.len(), 1);
        let mut b = CategoryBuilder::new();
        let (x, y) = (b.add_object("x"), b.add_object("y"));
        let f = b.add_arrow("f", x, y);
        let g = b.add_arrow("g", y, x);
        b.set_composite(g, f, b.identity(x));
        b.set_composite(f, g, b.identity(y));
        let iso = b.build();
        assert!(iso.validate().is_empty());
        let cyc = iso.find_cycle().unwrap();
        assert_eq!(cyc.len(), 2);
        assert_eq!(iso.src(cyc[0]), iso.tgt(cyc[1]));
    }

    #[test]
    fn product_and_full_subcategory_are_valid() {
        let p = ordinal(1).product(&cyclic_group(2));
        assert!(p.validate().is_empty());
        assert_eq!(p.num_arrows(), 6);
        let (sub, embed) = ordinal(3).full_subcategory(&[0, 2, 3]);
        assert!(sub.validate().is_empty());
        assert_eq!(sub.num_arrows(), 6);
        assert_eq!(embed.len(), 6);
    }

    #[test]
    fn components() {
        let mut b = CategoryBuilder::new();
        let (x, y, _z) = (b.add_object("x"), b.add_object("y"), b.add_object("z"));
        b.add_arrow("f", y, x);
        let (n, comp) = b.build().connected_components();
        assert_eq!(n, 2);
        assert_eq!(comp, vec![0, 0, 1]);
    }
}
