//! Pareto dominance, fast non-dominated sorting and crowding distance.
//! All objectives are maximized.

/// `a` is no worse than `b` everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        strictly |= x > y;
    }
    strictly
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDominatedSorting {
    /// Fronts in order, each listing population indices ascending.
    pub fronts: Vec<Vec<usize>>,
    /// Front index per individual.
    pub rank: Vec<usize>,
    /// Number of individuals dominating each one.
    pub domination_count: Vec<usize>,
}

/// Deb's O(M N^2) peeling of a population into successive fronts.
pub fn fast_nondominated_sort<T: AsRef<[f64]>>(objs: &[T]) -> NonDominatedSorting {
    let n = objs.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (objs[p].as_ref(), objs[q].as_ref());
            if dominates(a, b) {
                dominated_by[p].push(q);
                count[q] += 1;
            } else if dominates(b, a) {
                dominated_by[q].push(p);
                count[p] += 1;
            }
        }
    }
    let domination_count = count.clone();
    let mut rank = vec![0usize; n];
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            rank[p] = fronts.len();
            for &q in &dominated_by[p] {
                count[q] -= 1;
                if count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    NonDominatedSorting {
        fronts,
        rank,
        domination_count,
    }
}

/// Front index of each point for exactly two objectives, in O(N log N).
///
/// Points are visited by the first objective descending (second
/// descending on ties), so every earlier point is no worse on the first
/// objective. Each front is then represented by its most recently added
/// point, which has the largest second objective in that front.
pub fn front_ranks_2d(objs: &[[f64; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..objs.len()).collect();
    order.sort_by(|&a, &b| {
        objs[b][0]
            .total_cmp(&objs[a][0])
            .then(objs[b][1].total_cmp(&objs[a][1]))
    });
    let mut tails: Vec<[f64; 2]> = Vec::new();
    let mut rank = vec![0; objs.len()];
    for i in order {
        let p = objs[i];
        let beaten = |t: &[f64; 2]| t[1] > p[1] || (t[1] == p[1] && t[0] > p[0]);
        // tails are ordered so that "beaten" is true for a prefix of fronts
        let k = tails.partition_point(beaten);
        if k == tails.len() {
            tails.push(p);
        } else {
            tails[k] = p;
        }
        rank[i] = k;
    }
    rank
}

/// Groups indices by front, ascending within each front.
pub fn fronts_from_ranks(rank: &[usize]) -> Vec<Vec<usize>> {
    let count = rank.iter().max().map_or(0, |m| m + 1);
    let mut fronts = vec![Vec::new(); count];
    for (i, &r) in rank.iter().enumerate() {
        fronts[r].push(i);
    }
    fronts
}

/// Crowding distance of each member of one front.
///
/// Per objective, the extreme members get infinity and interior members
/// accumulate the normalized gap between their neighbours. An objective
/// whose values are all equal contributes nothing, extremes included.
/// Fronts of one or two members are all infinite.
pub fn crowding_distance<T: AsRef<[f64]>>(front: &[T]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].as_ref().len();
    let mut dist = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let val = |i: usize| front[i].as_ref()[k];
        order.sort_by(|&a, &b| val(a).total_cmp(&val(b)).then(a.cmp(&b)));
        let (lo, hi) = (val(order[0]), val(order[n - 1]));
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (val(order[w + 1]) - val(order[w - 1])) / range;
            }
        }
    }
    dist
}
