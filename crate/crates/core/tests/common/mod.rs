#![allow(dead_code)]

use std::collections::BTreeSet;

use annulus::{BraidWord, Curve, Move, Pt, SheafClass, Surface};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SURFACES: [(i64, i64); 5] = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)];

pub fn surface(p: i64, q: i64) -> Surface {
    Surface::new(p, q).unwrap()
}

/// Bridging curves within two full turns, plus peripheral curves of span
/// 2..=2*rank+2 (arcs and non-arcs alike).
pub fn window(s: &Surface) -> Vec<Curve> {
    let t = 2 * s.p() * s.q();
    let mut out = s.bridging_in_window(-t, t);
    for a in 0..s.p() {
        for span in 2..=2 * s.p() + 2 {
            out.push(Curve::Inner { a, b: a + span });
        }
    }
    for a in 0..s.q() {
        for span in 2..=2 * s.q() + 2 {
            out.push(Curve::Outer { a, b: a + span });
        }
    }
    out
}

pub fn window_arcs(s: &Surface) -> Vec<Curve> {
    window(s).into_iter().filter(|c| s.is_arc(*c)).collect()
}

pub fn window_sheaves(s: &Surface) -> Vec<SheafClass> {
    window(s).into_iter().map(|c| s.phi(c).unwrap()).collect()
}

/// Strip x-coordinate on a grid fine enough for endpoint perturbations.
fn grid_x(s: &Surface, pt: Pt) -> i64 {
    match pt {
        Pt::Inner(i) => 4 * s.q() * i,
        Pt::Outer(j) => 4 * s.p() * j,
    }
}

/// A boundary point of the strip: (on top?, grid x).
type BPt = (bool, i64);

fn ccw_key(b: BPt) -> (u8, i64) {
    if b.0 {
        (1, -b.1)
    } else {
        (0, b.1)
    }
}

fn orient(a: (i128, i128), b: (i128, i128), c: (i128, i128)) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Counts positive crossings of straight chords after mapping the boundary
/// of the strip, in counterclockwise order, onto the convex curve y = x^2.
fn count_chords(seg1: (BPt, BPt), segs2: &[(BPt, BPt)]) -> u64 {
    let mut pts: Vec<BPt> = vec![seg1.0, seg1.1];
    for s in segs2 {
        pts.push(s.0);
        pts.push(s.1);
    }
    pts.sort_by_key(|b| ccw_key(*b));
    pts.dedup();
    let place = |b: BPt| {
        let t = pts.binary_search_by_key(&ccw_key(b), |x| ccw_key(*x)).unwrap() as i128;
        (t, t * t)
    };
    let (a, b) = (place(seg1.0), place(seg1.1));
    let mut n = 0;
    for s in segs2 {
        let (c, d) = (place(s.0), place(s.1));
        let proper = orient(a, b, c).signum() * orient(a, b, d).signum() < 0
            && orient(c, d, a).signum() * orient(c, d, b).signum() < 0;
        let det = (b.0 - a.0) * (d.1 - c.1) - (b.1 - a.1) * (d.0 - c.0);
        if proper && det > 0 {
            n += 1;
        }
    }
    n
}

fn bpt(s: &Surface, pt: Pt, nudge: i64) -> BPt {
    (matches!(pt, Pt::Inner(_)), grid_x(s, pt) + nudge)
}

/// Brute-force I+: lifts as straight chords, counting proper crossings with
/// every translate of the second curve in a generous range. Chords sharing an
/// endpoint never cross in the interior of the disk.
pub fn geometric_iplus(s: &Surface, g1: Curve, g2: Curve) -> u64 {
    let reach = |c: Curve| match c {
        Curve::Bridging { i, j } => (i / s.p()).abs() + (j / s.q()).abs() + 2,
        Curve::Inner { a, b } => (a.abs() + b.abs()) / s.p() + 1,
        Curve::Outer { a, b } => (a.abs() + b.abs()) / s.q() + 1,
        Curve::Loop { .. } => 0,
    };
    let kmax = reach(g1) + reach(g2) + 4;
    let seg1 = (bpt(s, g1.start().unwrap(), 0), bpt(s, g1.end().unwrap(), 0));
    let segs: Vec<_> = (-kmax..=kmax)
        .map(|k| {
            let t = s.translate(g2, k);
            (bpt(s, t.start().unwrap(), 0), bpt(s, t.end().unwrap(), 0))
        })
        .collect();
    count_chords(seg1, &segs)
}

/// Algebraic Ext via Serre duality on the oracle Hom.
pub fn ext_oracle(s: &Surface, x: SheafClass, y: SheafClass) -> u64 {
    s.hom_dim_oracle(y, s.tau(x)).unwrap()
}

pub fn is_pair_oracle(s: &Surface, e: SheafClass, f: SheafClass) -> bool {
    ext_oracle(s, e, e) == 0
        && ext_oracle(s, f, f) == 0
        && s.hom_dim_oracle(e, e).unwrap() == 1
        && s.hom_dim_oracle(f, f).unwrap() == 1
        && s.hom_dim_oracle(f, e).unwrap() == 0
        && ext_oracle(s, f, e) == 0
}

fn tube(x: SheafClass) -> Option<(bool, i64, i64)> {
    match x {
        SheafClass::TorsionInf { i, len } => Some((true, i, len)),
        SheafClass::TorsionZero { i, len } => Some((false, i, len)),
        _ => None,
    }
}

fn torsion(s: &Surface, inf: bool, i: i64, len: i64) -> SheafClass {
    if len == 0 {
        SheafClass::Zero
    } else if inf {
        s.tinf(i, len)
    } else {
        s.tzero(i, len)
    }
}

/// Left and right mutations of an exceptional pair computed from module
/// theory alone: universal maps, their kernels and cokernels, and universal
/// extensions.
pub fn algebraic_mutation(s: &Surface, e: SheafClass, f: SheafClass) -> Option<(SheafClass, SheafClass)> {
    let hom = s.hom_dim_oracle(e, f).unwrap();
    let ext = ext_oracle(s, e, f);
    let one = |x: SheafClass| Some((x, x));
    match (hom, ext) {
        (0, 0) => Some((f, e)),
        (2, 0) => {
            let SheafClass::LineBundle(x) = e else { return None };
            Some((s.line(s.sub(x, s.c())), s.line(s.add(x, s.scale(2, s.c())))))
        }
        (1, 0) => match (e, f) {
            (SheafClass::LineBundle(x), SheafClass::LineBundle(y)) => {
                let d = s.sub(y, x);
                if d.l != 0 || (d.l1 != 0 && d.l2 != 0) {
                    return None;
                }
                if d.l1 != 0 {
                    one(s.tinf(y.l1, d.l1))
                } else {
                    one(s.tzero(y.l2, d.l2))
                }
            }
            (SheafClass::LineBundle(x), t) => {
                let (inf, _, len) = tube(t)?;
                let g = if inf { s.x1() } else { s.x2() };
                one(s.line(s.sub(x, s.scale(len, g))))
            }
            (a, b) => {
                let (inf, ia, ja) = tube(a)?;
                let (_, ib, jb) = tube(b)?;
                let r = if inf { s.p() } else { s.q() };
                if ja < jb && (ib - jb + ja - ia).rem_euclid(r) == 0 {
                    one(torsion(s, inf, ib, jb - ja))
                } else if ja > jb && (ia - ib).rem_euclid(r) == 0 {
                    one(torsion(s, inf, ia - jb, ja - jb))
                } else {
                    None
                }
            }
        },
        (0, 1) => match (e, f) {
            (t, SheafClass::LineBundle(y)) => {
                let (inf, _, len) = tube(t)?;
                let g = if inf { s.x1() } else { s.x2() };
                one(s.line(s.add(y, s.scale(len, g))))
            }
            (a, b) => {
                let (inf, ia, ja) = tube(a)?;
                let (_, _, jb) = tube(b)?;
                one(torsion(s, inf, ia, ja + jb))
            }
        },
        _ => None,
    }
}

/// A random braid image of the canonical collection, after a random se-shift.
pub fn random_sequence(s: &Surface, rng: &mut ChaCha8Rng, len: usize) -> (Vec<Curve>, BraidWord) {
    let n = (s.p() + s.q()) as i32;
    let mut base = s.canonical_theta();
    let shift: i32 = rng.gen_range(-2..=2);
    for _ in 0..shift.abs() {
        let m = if shift > 0 { [Move::S, Move::E] } else { [Move::SInv, Move::EInv] };
        base = base.iter().map(|&c| s.move_curve(c, &m).unwrap()).collect();
    }
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let l = rng.gen_range(1..n);
            if rng.gen_bool(0.5) { l } else { -l }
        })
        .collect();
    let w = BraidWord(letters);
    (s.apply_braid(&base, &w).unwrap(), w)
}


fn b(s: &Surface, i: i64, j: i64) -> Curve {
    s.bridging(i, j)
}

/// σ3²σ2²σ1σ2²σ3σ1² on a fan of three arcs plus one more bridge.
/// `None` when the four arcs are not an ordered exceptional collection on
/// this surface.
pub fn fan_word_holds(s: &Surface, x: i64, y: i64) -> Option<bool> {
    let l = vec![b(s, y, x + 2), b(s, y, x + 1), b(s, y, x), b(s, y + 1, x + 2)];
    let want = vec![b(s, y + 1, x + 2), b(s, y + 1, x + 1), b(s, y, x), b(s, y + 1, x)];
    let w = BraidWord(vec![3, 3, 2, 2, 1, 2, 2, 3, 1, 1]);
    if !s.is_ordered_exceptional_collection(&l).unwrap_or(false) {
        return None;
    }
    Some(s.apply_braid(&l, &w).unwrap() == want)
}

/// σ_k…σ_{r-1} on outer arcs ending at 0, inner arcs starting at 0, and the
/// short bridge from outer -1 to inner 1.
pub fn chain_word_cases(s: &Surface) -> (usize, usize) {
    let (p, q) = (s.p(), s.q());
    let (mut ok, mut total) = (0, 0);
    let subsets = |lo: i64, hi: i64| -> Vec<Vec<i64>> {
        let vals: Vec<i64> = (lo..=hi).collect();
        (0..1u32 << vals.len())
            .map(|m| vals.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
            .collect()
    };
    for outs in subsets(-q, -2) {
        if outs.is_empty() {
            continue;
        }
        for ins in subsets(2, p) {
            if ins.is_empty() {
                continue;
            }
            // a_1 > … > a_k and b_{k+1} < … < b_{r-1}
            let mut a = outs.clone();
            a.sort_by(|x, y| y.cmp(x));
            let k = a.len();
            let mut l: Vec<Curve> = a.iter().map(|&ai| s.canonical(Curve::Outer { a: ai, b: 0 }).unwrap()).collect();
            l.extend(ins.iter().map(|&bi| Curve::Inner { a: 0, b: bi }));
            l.push(b(s, 1, -1));
            if !s.is_ordered_exceptional_collection(&l).unwrap() {
                continue;
            }
            let r = l.len();
            let w = BraidWord((k as i32..r as i32).collect());
            let mut want: Vec<Curve> = l[..k - 1].to_vec();
            want.push(b(s, *ins.last().unwrap(), a[k - 1]));
            want.extend_from_slice(&l[k - 1..r - 1]);
            total += 1;
            if s.apply_braid(&l, &w).unwrap() == want {
                ok += 1;
            }
        }
    }
    (ok, total)
}

/// The composite word σ_{p+q-1}² σ_{p+q-2}…σ_{p+1} σ_p…σ_2 σ_1² σ_2…σ_p.
/// For q = 1 the arc δ' already is the shifted last arc, so the outer block
/// of letters drops out.
pub fn start_shift_word(p: i32, q: i32) -> BraidWord {
    let mut v = Vec::new();
    if q > 1 {
        v.extend([p + q - 1, p + q - 1]);
        v.extend((p + 1..=p + q - 2).rev());
    }
    v.extend((2..=p).rev());
    v.extend([1, 1]);
    v.extend(2..=p);
    BraidWord(v)
}


/// All sets of `target` pairwise non-crossing arcs from `pool` whose lowest
/// bridging winding lies in [0, p+q), sorted. Each se-orbit of triangulations
/// containing a bridging arc has exactly one such member.
pub fn noncrossing_cliques(s: &Surface, pool: &[Curve], target: usize) -> BTreeSet<Vec<Curve>> {
    let n = pool.len();
    let ok: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| s.positive_int(pool[i], pool[j]).unwrap() == 0 && s.positive_int(pool[j], pool[i]).unwrap() == 0)
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == target {
            let mut t: Vec<Curve> = cur.iter().map(|&i| pool[i]).collect();
            let wmin = t.iter().filter_map(|&c| s.winding(c)).min();
            if matches!(wmin, Some(w) if (0..s.p() + s.q()).contains(&w)) {
                t.sort();
                out.insert(t);
            }
            continue;
        }
        for i in start..n {
            if cur.iter().all(|&j| ok[i][j]) {
                let mut next = cur.clone();
                next.push(i);
                stack.push((i + 1, next));
            }
        }
    }
    out
}

/// Brute-force se-classes of triangulations.
pub fn brute_force_classes(s: &Surface) -> BTreeSet<Vec<Curve>> {
    let (p, q) = (s.p(), s.q());
    let mut pool = s.peripheral_arcs();
    pool.extend(s.bridging_in_window(0, p + q + 2 * p * q));
    noncrossing_cliques(s, &pool, (p + q) as usize)
}

/// Brute-force τ-classes of tilting bundles: bridging arcs only.
pub fn brute_force_bundle_classes(s: &Surface) -> BTreeSet<Vec<Curve>> {
    let (p, q) = (s.p(), s.q());
    let pool = s.bridging_in_window(0, p + q + 2 * p * q);
    noncrossing_cliques(s, &pool, (p + q) as usize)
}
