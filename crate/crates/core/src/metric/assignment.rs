//! Assignment solvers on dense square cost matrices.

use std::collections::VecDeque;

/// Minimum-cost perfect assignment (Hungarian method with potentials,
/// O(n^3)). `cost` is row-major `n x n` with finite entries. Returns the
/// column assigned to each row.
pub fn min_cost_assignment(n: usize, cost: &[f64]) -> Vec<usize> {
    debug_assert_eq!(cost.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    // 1-based arrays; index 0 is the virtual root column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        row_of_col[0] = row;
        let mut col0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let i0 = row_of_col[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = col0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    col1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            col0 = col1;
            if row_of_col[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            row_of_col[col0] = row_of_col[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; n];
    for j in 1..=n {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    col_of_row
}

/// Maximum bipartite matching (Hopcroft-Karp) between `n` left and `n` right
/// vertices. Returns the right partner of each left vertex, if any.
pub fn max_bipartite_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; n];
    let mut dist = vec![0usize; n];

    loop {
        // Layer the free left vertices.
        let mut queue = VecDeque::new();
        for (l, d) in dist.iter_mut().enumerate() {
            if match_left[l] == FREE {
                *d = 0;
                queue.push_back(l);
            } else {
                *d = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_right[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut progress = false;
        for l in 0..n {
            if match_left[l] == FREE
                && augment(l, adj, &mut match_left, &mut match_right, &mut dist)
            {
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }

    match_left
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        let next = match_right[r];
        let ok = next == usize::MAX
            || (dist[next] == dist[l] + 1 && augment(next, adj, match_left, match_right, dist));
        if ok {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Bottleneck assignment: a perfect matching minimizing the largest entry.
/// Infinite entries are forbidden edges. Returns `None` when no perfect
/// matching over finite entries exists.
pub fn bottleneck_assignment(n: usize, cost: &[f64]) -> Option<Vec<usize>> {
    debug_assert_eq!(cost.len(), n * n);
    if n == 0 {
        return Some(Vec::new());
    }
    let mut thresholds: Vec<f64> = cost.iter().copied().filter(|c| c.is_finite()).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let perfect_at = |theta: f64| -> Option<Vec<usize>> {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| cost[i * n + j] <= theta).collect())
            .collect();
        max_bipartite_matching(n, &adj).into_iter().collect()
    };

    // Smallest threshold admitting a perfect matching.
    let (mut lo, mut hi) = (0usize, thresholds.len());
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_at(thresholds[mid]) {
            Some(m) => {
                best = Some(m);
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    best
}
