use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use crate::curve::{Curve, Move, Pt};
use crate::error::{Error, Result};
use crate::sheaf::SheafClass;
use crate::surface::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A braid word. Letter `s > 0` is σ_s and `-s` is σ_s⁻¹; the word acts
/// right-to-left, so the last letter is applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    /// Builds a word from letters listed in the order they are applied.
    pub fn from_applied(applied: &[i32]) -> Self {
        BraidWord(applied.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// `self · other`: other is applied first.
    pub fn then_after(&self, other: &BraidWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord(out)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if *l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Limits for the fallback breadth-first search of the normalizer.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_states: 1_000_000 }
    }
}

impl Surface {
    fn connector(&self, a: Pt, b: Pt) -> Option<Curve> {
        match (a, b) {
            (Pt::Outer(_), Pt::Inner(_)) => Curve::joining(a, b),
            (Pt::Inner(_), Pt::Outer(_)) => Curve::joining(b, a),
            (Pt::Inner(x), Pt::Inner(y)) | (Pt::Outer(x), Pt::Outer(y)) if x != y => {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                let (lo, hi) = match a {
                    Pt::Inner(_) => (Pt::Inner(lo), Pt::Inner(hi)),
                    Pt::Outer(_) => (Pt::Outer(lo), Pt::Outer(hi)),
                };
                Curve::joining(lo, hi)
            }
            _ => None,
        }
    }

    fn shift_end(c: Curve) -> Curve {
        match c {
            Curve::Bridging { i, j } => Curve::Bridging { i: i + 1, j },
            Curve::Inner { a, b } => Curve::Inner { a, b: b + 1 },
            Curve::Outer { a, b } => Curve::Outer { a, b: b + 1 },
            l => l,
        }
    }

    fn shift_start(c: Curve) -> Curve {
        match c {
            Curve::Bridging { i, j } => Curve::Bridging { i, j: j - 1 },
            Curve::Inner { a, b } => Curve::Inner { a: a - 1, b },
            Curve::Outer { a, b } => Curve::Outer { a: a - 1, b },
            l => l,
        }
    }

    fn result_arc(&self, c: Curve, what: &str) -> Result<Curve> {
        let c = self
            .canonical(c)
            .map_err(|e| Error::InternalInvariantViolation(format!("{what} produced an invalid curve: {e}")))?;
        if !self.is_arc(c) {
            return Err(Error::InternalInvariantViolation(format!("{what} produced the non-arc {c}")));
        }
        Ok(c)
    }

    /// Left mutation of `beta` at `alpha`, or right mutation of `alpha` at `beta`.
    pub fn mutate_pair(&self, alpha: Curve, beta: Curve, side: Side) -> Result<Curve> {
        for c in [alpha, beta] {
            self.check_curve(c)?;
            if !self.is_arc(c) {
                return Err(Error::InvalidCurve(format!("{c} is not an arc")));
            }
        }
        let (e, f) = (self.phi(alpha)?, self.phi(beta)?);
        if !self.is_exceptional_pair(e, f) {
            return Err(Error::NotExceptional);
        }
        let same = match side {
            Side::Left => beta,
            Side::Right => alpha,
        };
        if self.hom_dim(e, f)? == 0 && self.ext1_dim(e, f)? == 0 {
            return Ok(same);
        }
        if let (SheafClass::LineBundle(x), SheafClass::LineBundle(y)) = (e, f) {
            if y == self.add(x, self.c()) {
                let Curve::Bridging { i, j } = alpha else { unreachable!() };
                return Ok(match side {
                    Side::Left => self.bridging(i, j + self.q()),
                    Side::Right => self.bridging(i + 2 * self.p(), j),
                });
            }
        }
        if let Some(w) = self.exceptional_intersection(alpha, beta)? {
            let b = self.translate(beta, w.lift_offset);
            let g3 = Curve::joining(alpha.start().unwrap(), b.end().unwrap());
            let g4 = Curve::joining(b.start().unwrap(), alpha.end().unwrap());
            let live: Vec<Curve> = [g3, g4].into_iter().flatten().filter(|c| !c.is_degenerate()).collect();
            if live.len() != 1 {
                return Err(Error::InternalInvariantViolation(format!(
                    "smoothing {alpha} and {beta} left {} non-degenerate components",
                    live.len()
                )));
            }
            return self.result_arc(live[0], "smoothing");
        }
        let rel = self.endpoint_relation(alpha, beta)?;
        let (shared_start, shared_end) = (rel.shared_start, rel.shared_end);
        if shared_start != shared_end {
            let at_start = shared_start;
            let m = if at_start { alpha.start() } else { alpha.end() }.unwrap();
            let pt = if at_start { beta.start() } else { beta.end() }.unwrap();
            let k = match (pt, m) {
                (Pt::Inner(x), Pt::Inner(y)) => (y - x) / self.p(),
                (Pt::Outer(x), Pt::Outer(y)) => (y - x) / self.q(),
                _ => unreachable!(),
            };
            let b = self.translate(beta, k);
            let free = |c: Curve| if at_start { c.end() } else { c.start() }.unwrap();
            let delta = self.connector(free(alpha), free(b)).ok_or_else(|| {
                Error::InternalInvariantViolation(format!("no connector for {alpha} and {beta}"))
            })?;
            let moved = if at_start { Self::shift_start(delta) } else { Self::shift_end(delta) };
            return self.result_arc(moved, "endpoint mutation");
        }
        Err(Error::InternalInvariantViolation(format!(
            "exceptional pair ({alpha}, {beta}) fits no mutation case"
        )))
    }

    /// Applies one letter without re-validating the whole list.
    fn apply_letter(&self, list: &mut [Curve], letter: i32) -> Result<()> {
        let s = letter.unsigned_abs() as usize;
        if s == 0 || s >= list.len() {
            return Err(Error::IndexOutOfRange { index: s, len: list.len() });
        }
        let (a, b) = (list[s - 1], list[s]);
        if letter > 0 {
            list[s - 1] = self.mutate_pair(a, b, Side::Left)?;
            list[s] = a;
        } else {
            list[s - 1] = b;
            list[s] = self.mutate_pair(a, b, Side::Right)?;
        }
        Ok(())
    }

    pub fn apply_braid(&self, list: &[Curve], word: &BraidWord) -> Result<Vec<Curve>> {
        if !self.is_ordered_exceptional_collection(list)? {
            return Err(Error::NotExceptional);
        }
        let mut cur = list.to_vec();
        for &l in word.0.iter().rev() {
            self.apply_letter(&mut cur, l)?;
            if !self.is_ordered_exceptional_collection(&cur)? {
                return Err(Error::InternalInvariantViolation(format!(
                    "letter {l} left a list that is not an ordered exceptional collection"
                )));
            }
        }
        Ok(cur)
    }

    /// The fan-shaped collection of bridging arcs δ_1, …, δ_{k+l+1}.
    pub fn theta(&self, x: i64, y: i64, k: i64, l: i64) -> Result<Vec<Curve>> {
        let (p, q) = (self.p(), self.q());
        let maximal = k == q - 1 && l == p;
        if !maximal && !((1..=q).contains(&k) && (1..=p).contains(&l) && k + l < p + q) {
            return Err(Error::InvalidArguments(format!("theta needs 1<=k<=q, 1<=l<=p, k+l<p+q; got k={k}, l={l}")));
        }
        let mut out = Vec::new();
        for i in 1..=l {
            out.push(self.bridging(y + i - 1, x));
        }
        for i in l + 1..=k + l + 1 {
            out.push(self.bridging(y + l, x + k + l + 1 - i));
        }
        Ok(out)
    }

    pub fn canonical_theta(&self) -> Vec<Curve> {
        self.theta(0, 0, self.q() - 1, self.p()).unwrap()
    }

    /// A braid word taking a maximal ordered exceptional collection to
    /// `theta(0, 0, q-1, p)`.
    pub fn normalize_to_theta(&self, list: &[Curve], budget: SearchBudget) -> Result<BraidWord> {
        if list.len() as i64 != self.p() + self.q() {
            return Err(Error::InvalidArguments(format!(
                "expected {} arcs, got {}",
                self.p() + self.q(),
                list.len()
            )));
        }
        if !self.is_ordered_exceptional_collection(list)? {
            return Err(Error::NotExceptional);
        }
        let target = self.canonical_theta();
        let mut run = Normalizer { s: self, cur: list.to_vec(), applied: Vec::new() };
        if run.constructive(&target).is_err() {
            let tail = self.bfs(&run.cur, &target, budget)?;
            run.applied.extend(tail);
        }
        let word = BraidWord::from_applied(&run.applied).free_reduce();
        if self.apply_braid(list, &word)? != target {
            return Err(Error::InternalInvariantViolation("normalizer word misses the target".into()));
        }
        Ok(word)
    }

    fn bfs(&self, start: &[Curve], target: &[Curve], budget: SearchBudget) -> Result<Vec<i32>> {
        let n = start.len() as i32;
        let mut seen: HashMap<Vec<Curve>, (Vec<Curve>, i32)> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(start.to_vec(), (Vec::new(), 0));
        queue.push_back(start.to_vec());
        while let Some(cur) = queue.pop_front() {
            if cur == target {
                let mut letters = Vec::new();
                let mut at = cur;
                while at != start {
                    let (prev, l) = seen[&at].clone();
                    letters.push(l);
                    at = prev;
                }
                letters.reverse();
                return Ok(letters);
            }
            for s in 1..n {
                for l in [s, -s] {
                    let mut next = cur.clone();
                    if self.apply_letter(&mut next, l).is_err() || seen.contains_key(&next) {
                        continue;
                    }
                    if seen.len() >= budget.max_states {
                        return Err(Error::SearchExhausted(budget.max_states));
                    }
                    seen.insert(next.clone(), (cur.clone(), l));
                    queue.push_back(next);
                }
            }
        }
        Err(Error::SearchExhausted(seen.len()))
    }
}

struct Normalizer<'a> {
    s: &'a Surface,
    cur: Vec<Curve>,
    applied: Vec<i32>,
}

impl Normalizer<'_> {
    fn step(&mut self, letter: i32) -> Result<()> {
        self.s.apply_letter(&mut self.cur, letter)?;
        self.applied.push(letter);
        Ok(())
    }

    fn sheaf(&self, idx: usize) -> SheafClass {
        self.s.phi(self.cur[idx]).unwrap()
    }

    fn constructive(&mut self, target: &[Curve]) -> Result<()> {
        self.bundles_only()?;
        self.flip_to(target)?;
        self.sort_to(target)
    }

    /// Replaces torsion members one at a time by line bundles.
    fn bundles_only(&mut self) -> Result<()> {
        let s = self.s;
        'outer: loop {
            let torsion: Vec<usize> = (0..self.cur.len()).filter(|&i| !self.cur[i].is_bridging()).collect();
            if torsion.is_empty() {
                return Ok(());
            }
            for &t in &torsion {
                let tt = self.sheaf(t);
                let before = (0..t)
                    .rev()
                    .find(|&b| self.cur[b].is_bridging() && s.hom_dim(self.sheaf(b), tt).unwrap_or(0) > 0);
                if let Some(b) = before {
                    for pos in (b + 2..=t).rev() {
                        self.step(-(pos as i32))?;
                    }
                    self.step(b as i32 + 1)?;
                    continue 'outer;
                }
                let after = (t + 1..self.cur.len())
                    .find(|&b| self.cur[b].is_bridging() && s.ext1_dim(tt, self.sheaf(b)).unwrap_or(0) > 0);
                if let Some(b) = after {
                    for pos in t..b - 1 {
                        self.step(pos as i32 + 1)?;
                    }
                    self.step(-(b as i32))?;
                    continue 'outer;
                }
            }
            return Err(Error::InternalInvariantViolation("no torsion member can be converted".into()));
        }
    }

    /// Lattice heights a_t of the periodic staircase of an all-bridging list.
    fn heights(&self) -> Result<(Vec<i64>, Vec<usize>)> {
        let (p, q) = (self.s.p(), self.s.q());
        let n = (p + q) as usize;
        let mut a = vec![i64::MIN; n];
        let mut at = vec![usize::MAX; n];
        for (idx, c) in self.cur.iter().enumerate() {
            let Curve::Bridging { i, j } = *c else {
                return Err(Error::InternalInvariantViolation("torsion left in staircase".into()));
            };
            let t = (i + j).rem_euclid(p + q);
            let k = (t - (i + j)) / (p + q);
            if a[t as usize] != i64::MIN {
                return Err(Error::InternalInvariantViolation("two arcs with the same staircase slot".into()));
            }
            a[t as usize] = i + k * p;
            at[t as usize] = idx;
        }
        for t in 0..n {
            let next = if t + 1 < n { a[t + 1] } else { a[0] + p };
            if !(0..=1).contains(&(next - a[t])) {
                return Err(Error::InternalInvariantViolation("bridging arcs do not form a staircase".into()));
            }
        }
        Ok((a, at))
    }

    fn flip_to(&mut self, target: &[Curve]) -> Result<()> {
        let (p, q) = (self.s.p(), self.s.q());
        let n = (p + q) as usize;
        let star: Vec<i64> = (0..n as i64).map(|t| t.min(p)).collect();
        loop {
            let (a, at) = self.heights()?;
            let h = |t: i64| a[t.rem_euclid(n as i64) as usize] + t.div_euclid(n as i64) * p;
            let d: Vec<i64> = (0..n).map(|t| a[t] - star[t]).collect();
            let (max, min) = (*d.iter().max().unwrap(), *d.iter().min().unwrap());
            if max == 0 && min == 0 {
                break;
            }
            let lift = |t: i64| self.s.bridging(h(t), t - h(t));
            let is_corner = |t: i64, en: bool| {
                let (din, dout) = (h(t) - h(t - 1), h(t + 1) - h(t));
                if en {
                    din == 1 && dout == 0
                } else {
                    din == 0 && dout == 1
                }
            };
            let en = max > 0;
            let want = if en { max } else { min };
            let mut flipped = false;
            for t in (0..n as i64).filter(|&t| n >= 3 && d[t as usize] == want && is_corner(t, en)) {
                let (prev, cur, next) = (lift(t - 1), lift(t), lift(t + 1));
                debug_assert_eq!(self.cur[at[t as usize]], cur);
                // prev and next are orthogonal unless a boundary has a single
                // marked point; then only one of their two orders is admissible
                let (u, v) = if self.must_precede(next, prev) { (next, prev) } else { (prev, next) };
                if en {
                    let Some(s0) = self.arrange(&[u, v, cur])? else { continue };
                    self.step(s0 as i32 + 2)?;
                    self.step(s0 as i32 + 1)?;
                    let fresh = self.s.bridging(h(t) - 1, t - h(t) + 1);
                    if self.cur[s0..s0 + 3] != [fresh, u, v] {
                        return Err(Error::InternalInvariantViolation("corner flip went astray".into()));
                    }
                } else {
                    let Some(s0) = self.arrange(&[cur, u, v])? else { continue };
                    self.step(-(s0 as i32 + 1))?;
                    self.step(-(s0 as i32 + 2))?;
                    let fresh = self.s.bridging(h(t) + 1, t - h(t) - 1);
                    if self.cur[s0..s0 + 3] != [u, v, fresh] {
                        return Err(Error::InternalInvariantViolation("corner flip went astray".into()));
                    }
                }
                flipped = true;
                break;
            }
            if !flipped {
                self.rotate(&d, &at)?;
            }
        }
        let mut have = self.cur.clone();
        let mut want = target.to_vec();
        have.sort();
        want.sort();
        if have != want {
            return Err(Error::InternalInvariantViolation("staircase differs from the target".into()));
        }
        Ok(())
    }

    /// Moves an unconstrained end member all the way across the list. Doing
    /// so with left mutations lowers its slot by one, with right mutations
    /// raises it by one.
    fn rotate(&mut self, d: &[i64], at: &[usize]) -> Result<()> {
        let n = self.cur.len();
        for lower in [true, false] {
            for t in 0..n {
                let x = self.cur[at[t]];
                let free = self.cur.iter().all(|&y| {
                    if lower { !self.must_precede(x, y) } else { !self.must_precede(y, x) }
                });
                if (lower && d[t] <= 0) || (!lower && d[t] >= 0) || !free {
                    continue;
                }
                let Curve::Bridging { i, j } = x else { unreachable!() };
                let rest = self.cur.iter().copied().filter(|&y| y != x);
                let want: Vec<Curve> = if lower {
                    rest.chain([x]).collect()
                } else {
                    [x].into_iter().chain(rest).collect()
                };
                self.sort_to(&want)?;
                if lower {
                    for l in (1..n as i32).rev() {
                        self.step(l)?;
                    }
                    if self.cur[0] != self.s.bridging(i - 1, j + 1) {
                        return Err(Error::InternalInvariantViolation("rotation went astray".into()));
                    }
                } else {
                    for l in 1..n as i32 {
                        self.step(-l)?;
                    }
                    if self.cur[n - 1] != self.s.bridging(i + 1, j - 1) {
                        return Err(Error::InternalInvariantViolation("rotation went astray".into()));
                    }
                }
                return Ok(());
            }
        }
        Err(Error::InternalInvariantViolation("no corner or end member to move".into()))
    }

    fn must_precede(&self, x: Curve, y: Curve) -> bool {
        let (a, b) = (self.s.phi(x).unwrap(), self.s.phi(y).unwrap());
        self.s.is_exceptional_pair(a, b) && !self.s.is_exceptional_pair(b, a)
    }

    /// Reorders by orthogonal swaps so that `block` sits consecutively in the
    /// given order; returns its first position, or None when precedence
    /// forbids it.
    fn arrange(&mut self, block: &[Curve]) -> Result<Option<usize>> {
        let n = self.cur.len();
        let pos = |c: Curve, v: &[Curve]| v.iter().position(|&d| d == c).unwrap();
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                if self.must_precede(block[j], block[i]) {
                    return Ok(None);
                }
            }
        }
        // node 0 is the block, others keep their list index + 1
        let others: Vec<Curve> = self.cur.iter().copied().filter(|c| !block.contains(c)).collect();
        let m = others.len() + 1;
        let mut succ = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        let mut key = vec![0usize; m];
        key[0] = block.iter().map(|&c| pos(c, &self.cur)).min().unwrap();
        for (k, &o) in others.iter().enumerate() {
            key[k + 1] = pos(o, &self.cur);
        }
        let mut edge = |u: usize, v: usize, succ: &mut Vec<Vec<usize>>| {
            if !succ[u].contains(&v) {
                succ[u].push(v);
                indeg[v] += 1;
            }
        };
        for (k, &o) in others.iter().enumerate() {
            for &b in block {
                if self.must_precede(o, b) {
                    edge(k + 1, 0, &mut succ);
                }
                if self.must_precede(b, o) {
                    edge(0, k + 1, &mut succ);
                }
            }
            for (k2, &o2) in others.iter().enumerate() {
                if k != k2 && self.must_precede(o, o2) {
                    edge(k + 1, k2 + 1, &mut succ);
                }
            }
        }
        let mut order = Vec::with_capacity(m);
        let mut ready: Vec<usize> = (0..m).filter(|&u| indeg[u] == 0).collect();
        while !ready.is_empty() {
            ready.sort_by_key(|&u| std::cmp::Reverse(key[u]));
            let u = ready.pop().unwrap();
            order.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        if order.len() != m {
            return Ok(None);
        }
        let mut want = Vec::with_capacity(n);
        for u in order {
            if u == 0 {
                want.extend_from_slice(block);
            } else {
                want.push(others[u - 1]);
            }
        }
        self.sort_to(&want)?;
        Ok(Some(pos(block[0], &self.cur)))
    }

    /// Bubble sort by swaps of orthogonal neighbours.
    fn sort_to(&mut self, want: &[Curve]) -> Result<()> {
        let rank: HashMap<Curve, usize> = want.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        loop {
            let Some(s) = (1..self.cur.len()).find(|&s| rank[&self.cur[s - 1]] > rank[&self.cur[s]]) else {
                return Ok(());
            };
            let (a, b) = (self.cur[s - 1], self.cur[s]);
            self.step(s as i32)?;
            if self.cur[s - 1] != b || self.cur[s] != a {
                return Err(Error::InternalInvariantViolation("swap of non-orthogonal neighbours".into()));
            }
        }
    }
}

/// Applies `moves` to every arc of a list.
pub fn move_all(s: &Surface, list: &[Curve], moves: &[Move]) -> Result<Vec<Curve>> {
    list.iter().map(|&c| s.move_curve(c, moves)).collect()
}
