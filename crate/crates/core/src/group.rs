//! Finite groups as Cayley tables, their distinguished subgroups, and
//! quotient constructions.
//!
//! Element ordering is fixed at construction and is part of the serialized
//! form, so coset indexings and downstream bases are reproducible. The
//! identity always sits at index 0 for groups built by this module's
//! constructors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Orders up to this bound get the full n^3 associativity check.
const ASSOC_CHECK_CAP: usize = 512;
/// Default cap on generator closures.
pub const CLOSURE_CAP: usize = 20000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    /// Flat row-major Cayley table: mul[i * order + j] = index of g_i * g_j.
    pub mul: Vec<u32>,
    pub identity: u32,
    pub inv: Vec<u32>,
    pub labels: Vec<String>,
}

/// A subgroup as a sorted set of element indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub elements: Vec<u32>,
}

/// Surjection G -> G/N at the group level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientMap {
    pub target: FiniteGroup,
    /// element index in the source -> coset index in the target
    pub fiber: Vec<u32>,
}

impl FiniteGroup {
    /// Validate a raw Cayley table. Associativity is checked exhaustively up
    /// to order 512; identity and inverse tables are always verified.
    pub fn new(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::NotAGroup("table size mismatch".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        let at = |i: usize, j: usize| mul[i * order + j] as usize;
        // locate a two-sided identity
        let mut identity = None;
        for e in 0..order {
            if (0..order).all(|g| at(e, g) == g && at(g, e) == g) {
                identity = Some(e as u32);
                break;
            }
        }
        let identity = identity.ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            let mut found = None;
            for h in 0..order {
                if at(g, h) == identity as usize && at(h, g) == identity as usize {
                    found = Some(h as u32);
                    break;
                }
            }
            inv[g] =
                found.ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))?;
        }
        if order <= ASSOC_CHECK_CAP {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::NotAGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| format!("g{i}")).collect());
        if labels.len() != order {
            return Err(Error::NotAGroup("label count mismatch".into()));
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inv,
            labels,
        })
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv_of(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.op(self.op(g, x), self.inv_of(g))
    }

    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        self.op(self.op(self.inv_of(g), self.inv_of(h)), self.op(g, h))
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.op(x, g);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for g in 0..self.order as u32 {
            e = lcm(e, self.element_order(g) as u64);
        }
        e
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32)
            .all(|a| (0..self.order as u32).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut class: Vec<u32> = (0..self.order as u32)
                .map(|g| self.conjugate(g, x))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y as usize] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Validated subgroup from an element set.
    pub fn subgroup(&self, mut elements: Vec<u32>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if !elements.contains(&self.identity) {
            return Err(Error::NotAGroup("subgroup lacks identity".into()));
        }
        for &a in &elements {
            if elements.binary_search(&self.inv_of(a)).is_err() {
                return Err(Error::NotAGroup("subgroup not closed under inverse".into()));
            }
            for &b in &elements {
                if elements.binary_search(&self.op(a, b)).is_err() {
                    return Err(Error::NotAGroup("subgroup not closed under product".into()));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity],
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order as u32).collect(),
        }
    }

    /// Subgroup generated by the given elements.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.op(x, g), self.op(g, x)] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        Subgroup {
            elements: (0..self.order as u32)
                .filter(|&i| seen[i as usize])
                .collect(),
        }
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        (0..self.order as u32).all(|g| {
            n.elements
                .iter()
                .all(|&x| n.elements.binary_search(&self.conjugate(g, x)).is_ok())
        })
    }

    /// { z : zg = gz for all g }.
    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order as u32)
            .filter(|&z| (0..self.order as u32).all(|g| self.op(z, g) == self.op(g, z)))
            .collect();
        Subgroup { elements }
    }

    /// Upper central series 1 = Z_0 <= Z_1 <= ..., ending at the first
    /// repetition. Z_i is the preimage of Z(G / Z_{i-1}).
    pub fn upper_central_series(&self) -> Result<Vec<Subgroup>> {
        let mut series = vec![self.trivial_subgroup()];
        loop {
            let last = series.last().unwrap().clone();
            let (_, qmap) = self.quotient_group(&last)?;
            let zq = qmap.target.center();
            let mut next: Vec<u32> = (0..self.order as u32)
                .filter(|&g| zq.elements.binary_search(&qmap.fiber[g as usize]).is_ok())
                .collect();
            next.sort_unstable();
            if next == last.elements {
                break;
            }
            series.push(Subgroup { elements: next });
        }
        Ok(series)
    }

    /// Final stable term of the upper central series.
    pub fn hypercenter(&self) -> Result<Subgroup> {
        Ok(self.upper_central_series()?.last().unwrap().clone())
    }

    /// Elements of p-power order in an abelian subgroup: its unique Sylow
    /// p-subgroup.
    pub fn p_part_of_abelian(&self, a: &Subgroup, p: u64) -> Result<Subgroup> {
        for &x in &a.elements {
            for &y in &a.elements {
                if self.op(x, y) != self.op(y, x) {
                    return Err(Error::NotAbelian);
                }
            }
        }
        self.p_torsion_subgroup(a, p)
    }

    /// Elements of p-power order in a subgroup, verified to be closed
    /// (which holds whenever the subgroup is nilpotent, e.g. the
    /// hypercenter).
    pub fn p_torsion_subgroup(&self, a: &Subgroup, p: u64) -> Result<Subgroup> {
        let elements: Vec<u32> = a
            .elements
            .iter()
            .copied()
            .filter(|&x| {
                let mut o = self.element_order(x) as u64;
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect();
        self.subgroup(elements)
    }

    /// Quotient by a normal subgroup: cosets are indexed by their smallest
    /// member, in ascending order, so the identity coset is index 0.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(FiniteGroup, QuotientMap)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        // coset of g = { g * x : x in N }, keyed by its minimum element
        let mut coset_key = vec![u32::MAX; self.order];
        for g in 0..self.order as u32 {
            let m = n.elements.iter().map(|&x| self.op(g, x)).min().unwrap();
            coset_key[g as usize] = m;
        }
        let mut keys: Vec<u32> = coset_key.clone();
        keys.sort_unstable();
        keys.dedup();
        let index_of: BTreeMap<u32, u32> = keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();
        let fiber: Vec<u32> = coset_key.iter().map(|k| index_of[k]).collect();
        let m = keys.len();
        let mut mul = vec![0u32; m * m];
        for (i, &ki) in keys.iter().enumerate() {
            for (j, &kj) in keys.iter().enumerate() {
                mul[i * m + j] = fiber[self.op(ki, kj) as usize];
            }
        }
        let labels = keys
            .iter()
            .map(|&k| format!("[{}]", self.labels[k as usize]))
            .collect();
        let target = FiniteGroup::new(m, mul, Some(labels))?;
        // surjective homomorphism check
        for a in 0..self.order as u32 {
            for b in 0..self.order as u32 {
                if fiber[self.op(a, b) as usize] != target.op(fiber[a as usize], fiber[b as usize])
                {
                    return Err(Error::NotAGroup("quotient map not multiplicative".into()));
                }
            }
        }
        Ok((target.clone(), QuotientMap { target, fiber }))
    }
}

impl FiniteGroup {
    /// A subgroup as a standalone group, with the index map back into the
    /// parent.
    pub fn subgroup_as_group(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<u32>)> {
        let k = n.order();
        let pos = |g: u32| n.elements.binary_search(&g).expect("closed") as u32;
        let mut mul = vec![0u32; k * k];
        for (i, &a) in n.elements.iter().enumerate() {
            for (j, &b) in n.elements.iter().enumerate() {
                mul[i * k + j] = pos(self.op(a, b));
            }
        }
        let labels = n
            .elements
            .iter()
            .map(|&g| self.labels[g as usize].clone())
            .collect();
        Ok((FiniteGroup::new(k, mul, Some(labels))?, n.elements.clone()))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: u32) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|g| other.contains(*g))
                .collect(),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------------------
// constructors

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::NotAGroup("cyclic(0)".into()));
    }
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = ((i + j) % n) as u32;
        }
    }
    let labels = (0..n)
        .map(|i| if i == 0 { "1".into() } else { format!("c{i}") })
        .collect();
    FiniteGroup::new(n, mul, Some(labels))
}

/// Dihedral group of order 2n with elements ordered a^0..a^{n-1},
/// a^0 b..a^{n-1} b, where b a b^{-1} = a^{-1}.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::NotAGroup("dihedral(0)".into()));
    }
    let m = 2 * n;
    let idx = |rot: usize, flip: bool| -> u32 { (rot % n + if flip { n } else { 0 }) as u32 };
    let mut mul = vec![0u32; m * m];
    for i in 0..m {
        let (ri, fi) = (i % n, i >= n);
        for j in 0..m {
            let (rj, fj) = (j % n, j >= n);
            // (a^ri b^fi)(a^rj b^fj): b a^r = a^{-r} b
            let rot = if fi { (ri + n - rj) % n } else { (ri + rj) % n };
            mul[i * m + j] = idx(rot, fi ^ fj);
        }
    }
    let labels = (0..m)
        .map(|i| {
            let (r, fl) = (i % n, i >= n);
            match (r, fl) {
                (0, false) => "1".to_string(),
                (0, true) => "b".to_string(),
                (r, false) => format!("a{r}"),
                (r, true) => format!("a{r}b"),
            }
        })
        .collect();
    FiniteGroup::new(m, mul, Some(labels))
}

/// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion8() -> Result<FiniteGroup> {
    // units 0=1, 1=i, 2=j, 3=k; element index = unit*2 + (sign<0)
    // unit multiplication with sign: (u, v) -> (sign, unit)
    let table = |u: usize, v: usize| -> (bool, usize) {
        match (u, v) {
            (0, v) => (false, v),
            (u, 0) => (false, u),
            (1, 1) => (true, 0),
            (2, 2) => (true, 0),
            (3, 3) => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mut mul = vec![0u32; 64];
    for a in 0..8usize {
        let (ua, sa) = (a / 2, a % 2 == 1);
        for b in 0..8usize {
            let (ub, sb) = (b / 2, b % 2 == 1);
            let (neg, u) = table(ua, ub);
            let s = neg ^ sa ^ sb;
            mul[a * 8 + b] = (u * 2 + s as usize) as u32;
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::new(8, mul, Some(labels))
}

/// Symmetric group on n points (n <= 5), permutations in lexicographic order.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > 5 {
        return Err(Error::NotAGroup(format!(
            "symmetric({n}) outside supported range 1..=5"
        )));
    }
    let perms = all_permutations(n);
    let index: BTreeMap<Vec<u8>, u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let m = perms.len();
    let mut mul = vec![0u32; m * m];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // (p*q)(x) = p(q(x))
            let comp: Vec<u8> = (0..n).map(|x| p[q[x] as usize]).collect();
            mul[i * m + j] = index[&comp];
        }
    }
    let labels = perms.iter().map(|p| perm_label(p)).collect();
    FiniteGroup::new(m, mul, Some(labels))
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    heap_lex(&mut out, &mut cur, 0);
    out.sort();
    out
}

fn heap_lex(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, k: usize) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        heap_lex(out, cur, k + 1);
        cur.swap(k, i);
    }
}

fn perm_label(p: &[u8]) -> String {
    // cycle notation on 1-based points
    let n = p.len();
    let mut seen = vec![false; n];
    let mut s = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x] as usize;
        }
        s.push('(');
        s.push_str(
            &cycle
                .iter()
                .map(|&i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let m = a.order * b.order;
    let mut mul = vec![0u32; m * m];
    let idx = |x: u32, y: u32| -> u32 { x * b.order as u32 + y };
    for x1 in 0..a.order as u32 {
        for y1 in 0..b.order as u32 {
            for x2 in 0..a.order as u32 {
                for y2 in 0..b.order as u32 {
                    let i = idx(x1, y1) as usize;
                    let j = idx(x2, y2) as usize;
                    mul[i * m + j] = idx(a.op(x1, x2), b.op(y1, y2));
                }
            }
        }
    }
    let labels = (0..m)
        .map(|i| {
            let (x, y) = (i / b.order, i % b.order);
            format!("({},{})", a.labels[x], b.labels[y])
        })
        .collect();
    FiniteGroup::new(m, mul, Some(labels))
}

/// Closure of permutation generators under composition, BFS from the
/// identity; errors if the closure exceeds `cap`.
pub fn from_permutation_generators(gens: &[Vec<u8>], cap: usize) -> Result<FiniteGroup> {
    let degree = gens.iter().map(|g| g.len()).max().unwrap_or(1);
    let pad = |g: &[u8]| -> Vec<u8> {
        let mut v: Vec<u8> = g.to_vec();
        for i in g.len()..degree {
            v.push(i as u8);
        }
        v
    };
    let gens: Vec<Vec<u8>> = gens.iter().map(|g| pad(g)).collect();
    for g in &gens {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if sorted != (0..degree as u8).collect::<Vec<_>>() {
            return Err(Error::Parse("not a permutation".into()));
        }
    }
    let id: Vec<u8> = (0..degree as u8).collect();
    let mut elems = vec![id.clone()];
    let mut index: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
    index.insert(id, 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in &gens {
            let prod: Vec<u8> = (0..degree).map(|x| cur[g[x] as usize]).collect();
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(Error::ClosureCap { cap });
                }
                index.insert(prod.clone(), elems.len() as u32);
                elems.push(prod);
            }
        }
    }
    let m = elems.len();
    let mut mul = vec![0u32; m * m];
    for (i, p) in elems.iter().enumerate() {
        for (j, q) in elems.iter().enumerate() {
            let comp: Vec<u8> = (0..degree).map(|x| p[q[x] as usize]).collect();
            mul[i * m + j] = index[&comp];
        }
    }
    let labels = elems.iter().map(|p| perm_label(p)).collect();
    FiniteGroup::new(m, mul, Some(labels))
}

// ---------------------------------------------------------------------------
// group spec mini-language: cyclic:6 | dihedral:6 | sym:4 | q8 |
// prod(sym:3,cyclic:3) | perm:[(1,2,3),(1,2)]

pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("prod(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
        let parts = split_top_level(inner)?;
        if parts.len() < 2 {
            return Err(Error::Parse("prod() needs at least two factors".into()));
        }
        let mut acc = parse_group_spec(parts[0])?;
        for part in &parts[1..] {
            let g = parse_group_spec(part)?;
            acc = direct_product(&acc, &g)?;
        }
        return Ok(acc);
    }
    if s == "q8" {
        return quaternion8();
    }
    if let Some(n) = s.strip_prefix("cyclic:") {
        return cyclic(parse_num(n)?);
    }
    if let Some(n) = s.strip_prefix("dihedral:") {
        return dihedral(parse_num(n)?);
    }
    if let Some(n) = s.strip_prefix("sym:") {
        return symmetric(parse_num(n)?);
    }
    if let Some(body) = s.strip_prefix("perm:") {
        let body = body.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("perm spec needs [...]: {s:?}")))?;
        let gens = parse_cycle_generators(body)?;
        return from_permutation_generators(&gens, CLOSURE_CAP);
    }
    Err(Error::Parse(format!("unrecognized group spec {s:?}")))
}

fn parse_num(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
        }
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

/// Parse "(1,2,3),(1,2)" into permutation images on 0-based points. Each
/// parenthesized group is one generator given as a single cycle or a
/// product of cycles like "(1,2)(3,4)".
fn parse_cycle_generators(body: &str) -> Result<Vec<Vec<u8>>> {
    let chunks = split_top_level(body)?;
    let mut gens = Vec::new();
    // a generator may span several chunks when written as (1,2)(3,4): the
    // split above breaks only at commas outside parens, so each chunk is a
    // full generator already.
    for chunk in chunks {
        if chunk.is_empty() {
            continue;
        }
        gens.push(parse_one_generator(chunk)?);
    }
    if gens.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    Ok(gens)
}

fn parse_one_generator(s: &str) -> Result<Vec<u8>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner_start = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let inner_end = rest[inner_start..]
            .find(')')
            .ok_or_else(|| Error::Parse(format!("expected ')' in {s:?}")))?
            + inner_start;
        let cyc: Result<Vec<usize>> = rest[inner_start + 1..inner_end]
            .split(',')
            .map(|t| {
                let v: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {t:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                Ok(v - 1)
            })
            .collect();
        cycles.push(cyc?);
        rest = rest[inner_end + 1..].trim();
    }
    let degree = cycles.iter().flatten().max().map_or(1, |&m| m + 1);
    let mut perm: Vec<u8> = (0..degree as u8).collect();
    // cycles in one generator are applied right-to-left, matching (p*q)(x) = p(q(x))
    for cyc in cycles.iter().rev() {
        let prev = perm.clone();
        let mut step: Vec<u8> = (0..degree as u8).collect();
        for w in 0..cyc.len() {
            step[cyc[w]] = cyc[(w + 1) % cyc.len()] as u8;
        }
        for x in 0..degree {
            perm[x] = prev[step[x] as usize];
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_order_and_center() {
        let d6 = dihedral(3).unwrap();
        assert_eq!(d6.order, 6);
        assert_eq!(d6.center().order(), 1);
        // order 12, n = 6: center {1, a^3}
        let d12 = dihedral(6).unwrap();
        let z = d12.center();
        assert_eq!(z.elements, vec![0, 3]);
    }

    #[test]
    fn symmetric_and_products() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order, 6);
        assert_eq!(s3.center().order(), 1);
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&s3, &c3).unwrap();
        assert_eq!(g.order, 18);
    }

    #[test]
    fn quaternion_center_and_series() {
        let q8 = quaternion8().unwrap();
        assert_eq!(q8.order, 8);
        let z = q8.center();
        assert_eq!(z.elements, vec![0, 1]); // {1, -1}
        let series = q8.upper_central_series().unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series[1].order(), 2);
        assert_eq!(series[2].order(), 8);
        assert_eq!(q8.hypercenter().unwrap().order(), 8);
    }

    #[test]
    fn ucs_trivial_and_abelian() {
        let s3 = symmetric(3).unwrap();
        let series = s3.upper_central_series().unwrap();
        assert_eq!(series.len(), 1);
        assert_eq!(s3.hypercenter().unwrap().order(), 1);
        let c6 = cyclic(6).unwrap();
        let series = c6.upper_central_series().unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[1].order(), 6);
    }

    #[test]
    fn p_parts() {
        let c6 = cyclic(6).unwrap();
        let a = c6.full_subgroup();
        assert_eq!(c6.p_part_of_abelian(&a, 2).unwrap().order(), 2);
        assert_eq!(c6.p_part_of_abelian(&a, 5).unwrap().order(), 1);
        let d12 = dihedral(6).unwrap();
        let z = d12.center();
        assert_eq!(d12.p_part_of_abelian(&z, 2).unwrap().order(), 2);
        let s3 = symmetric(3).unwrap();
        assert!(s3.p_part_of_abelian(&s3.full_subgroup(), 2).is_err());
    }

    #[test]
    fn quotients() {
        // D12 / Z = D6
        let d12 = dihedral(6).unwrap();
        let (q, _) = d12.quotient_group(&d12.center()).unwrap();
        assert_eq!(q.order, 6);
        assert_eq!(q.center().order(), 1);
        // G / 1 = G
        let (q, _) = d12.quotient_group(&d12.trivial_subgroup()).unwrap();
        assert_eq!(q.order, 12);
        // (S3 x C3) / C3 = S3
        let s3 = symmetric(3).unwrap();
        let c3 = cyclic(3).unwrap();
        let g = direct_product(&s3, &c3).unwrap();
        let n = g.subgroup((0..3).map(|i| i as u32).collect()).unwrap(); // 1 x C3
        assert_eq!(n.order(), 3);
        let (q, qmap) = g.quotient_group(&n).unwrap();
        assert_eq!(q.order, 6);
        assert_eq!(q.center().order(), 1);
        // fibers are cosets: each coset has |N| elements
        let mut counts = vec![0usize; q.order];
        for &c in &qmap.fiber {
            counts[c as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == 3));
    }

    #[test]
    fn perm_generators_d8() {
        let g = parse_group_spec("perm:[(1,2,3,4),(1,3)]").unwrap();
        assert_eq!(g.order, 8);
        // matches dihedral(4) structurally: center of order 2, exponent 4
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn spec_language() {
        assert_eq!(parse_group_spec("cyclic:6").unwrap().order, 6);
        assert_eq!(parse_group_spec("dihedral:6").unwrap().order, 12);
        assert_eq!(parse_group_spec("sym:4").unwrap().order, 24);
        assert_eq!(parse_group_spec("q8").unwrap().order, 8);
        assert_eq!(parse_group_spec("prod(sym:3,cyclic:3)").unwrap().order, 18);
        assert!(parse_group_spec("frobnicate:9").is_err());
    }

    #[test]
    fn normality_of_centers() {
        for g in [
            dihedral(6).unwrap(),
            quaternion8().unwrap(),
            symmetric(4).unwrap(),
        ] {
            assert!(g.is_normal(&g.center()));
            for z in g.upper_central_series().unwrap() {
                assert!(g.is_normal(&z));
            }
        }
    }

    #[test]
    fn central_series_commutator_containment() {
        // for n in N cap Z_i and any g, the commutator lands in N cap Z_{i-1}
        for g in [
            quaternion8().unwrap(),
            dihedral(6).unwrap(),
            direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ] {
            let series = g.upper_central_series().unwrap();
            let n = g.p_torsion_subgroup(&g.hypercenter().unwrap(), 2).unwrap();
            for i in 1..series.len() {
                let ni = n.intersect(&series[i]);
                let prev = n.intersect(&series[i - 1]);
                for &x in &ni.elements {
                    for h in 0..g.order as u32 {
                        assert!(prev.contains(g.commutator(h, x)));
                    }
                }
            }
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(cyclic(6).unwrap().exponent(), 6);
        assert_eq!(quaternion8().unwrap().exponent(), 4);
        assert_eq!(symmetric(3).unwrap().exponent(), 6);
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(dihedral(3).unwrap().conjugacy_classes().len(), 3);
        assert_eq!(symmetric(4).unwrap().conjugacy_classes().len(), 5);
        assert_eq!(quaternion8().unwrap().conjugacy_classes().len(), 5);
    }

    #[test]
    fn quotient_composes() {
        // (G/N1)/(N2/N1) has the order of G/N2 and both quotient maps compose
        let g = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        // index (x, y) = 2x + y: element 4 = c^2 in the C4 factor, element 2 = c
        let n1 = g.generated_subgroup(&[4]);
        assert_eq!(n1.order(), 2);
        let (q1, m1) = g.quotient_group(&n1).unwrap();
        let n2 = g.generated_subgroup(&[2]); // whole C4 factor
        assert_eq!(n2.order(), 4);
        let (q2, m2) = g.quotient_group(&n2).unwrap();
        // image of N2 in q1
        let n2_in_q1: Vec<u32> = n2.elements.iter().map(|&x| m1.fiber[x as usize]).collect();
        let n21 = q1.subgroup(n2_in_q1).unwrap();
        let (qq, mq) = q1.quotient_group(&n21).unwrap();
        assert_eq!(qq.order, q2.order);
        // explicit isomorphism: composite fiber map against direct fiber map
        let mut bij = vec![u32::MAX; qq.order];
        for x in 0..g.order as u32 {
            let via = mq.fiber[m1.fiber[x as usize] as usize];
            let direct = m2.fiber[x as usize];
            if bij[via as usize] == u32::MAX {
                bij[via as usize] = direct;
            } else {
                assert_eq!(bij[via as usize], direct);
            }
        }
        // the induced bijection is an isomorphism
        for a in 0..qq.order as u32 {
            for b in 0..qq.order as u32 {
                assert_eq!(
                    bij[qq.op(a, b) as usize],
                    q2.op(bij[a as usize], bij[b as usize])
                );
            }
        }
    }
}
