use pathfinding::kuhn_munkres::kuhn_munkres;
use pathfinding::matrix::Matrix;

/// Fixed-point resolution for scores in [0, 1].
const SCALE: f64 = 1e9;

/// Picks a one-to-one set of pairs from an `n_ja × n_es` score grid where
/// `None` marks an ineligible pair. The result maximizes the summed score;
/// among equal sums it prefers lower ja indices, then lower es indices.
/// Pairs come back sorted by ja index.
pub fn select_assignment(scores: &[Vec<Option<f64>>]) -> Vec<(usize, usize)> {
    let n_ja = scores.len();
    let n_es = scores.iter().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<usize> = (0..n_ja).filter(|&i| scores[i].iter().any(Option::is_some)).collect();
    let cols: Vec<usize> = (0..n_es).filter(|&j| rows.iter().any(|&i| eligible(scores, i, j).is_some())).collect();
    if rows.is_empty() {
        return Vec::new();
    }

    // Tie-break weight: larger for lower indices, and never large enough in
    // total to outweigh one fixed-point unit of score.
    let (n_ja_w, n_es_w) = (n_ja as i128, n_es as i128);
    let pref = |i: usize, j: usize| (n_ja_w - i as i128) * (n_es_w + 1) + (n_es_w - j as i128);
    let unit = (n_ja_w + 1) * (n_es_w + 1) * (n_ja_w.min(n_es_w) + 1) + 1;
    let weight = |i: usize, j: usize| match eligible(scores, i, j) {
        Some(s) => (s * SCALE).round() as i128 * unit + pref(i, j),
        None => 0,
    };

    let transpose = rows.len() > cols.len();
    let matrix = if transpose {
        Matrix::from_fn(cols.len(), rows.len(), |(c, r)| weight(rows[r], cols[c]))
    } else {
        Matrix::from_fn(rows.len(), cols.len(), |(r, c)| weight(rows[r], cols[c]))
    };
    let (_, assignment) = kuhn_munkres(&matrix);
    let mut pairs: Vec<(usize, usize)> = assignment
        .into_iter()
        .enumerate()
        .map(|(a, b)| if transpose { (rows[b], cols[a]) } else { (rows[a], cols[b]) })
        .filter(|&(i, j)| eligible(scores, i, j).is_some())
        .collect();
    pairs.sort_unstable();
    pairs
}

fn eligible(scores: &[Vec<Option<f64>>], i: usize, j: usize) -> Option<f64> {
    scores[i].get(j).copied().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&[f64]], threshold: f64) -> Vec<Vec<Option<f64>>> {
        rows.iter().map(|r| r.iter().map(|&s| (s >= threshold).then_some(s)).collect()).collect()
    }

    #[test]
    fn prefers_the_larger_total_sum() {
        // picking 0.9 first would leave only 0.1 for the second row
        let scores = grid(&[&[0.9, 0.8], &[0.7, 0.1]], 0.0);
        assert_eq!(select_assignment(&scores), [(0, 1), (1, 0)]);
    }

    #[test]
    fn shared_best_goes_to_the_higher_total() {
        let scores = grid(&[&[0.8, 0.0], &[0.9, 0.0]], 0.5);
        assert_eq!(select_assignment(&scores), [(1, 0)]);
        let tied = grid(&[&[0.8], &[0.8]], 0.5);
        assert_eq!(select_assignment(&tied), [(0, 0)]);
    }

    #[test]
    fn ineligible_pairs_are_never_selected() {
        assert!(select_assignment(&grid(&[&[0.1, 0.2]], 0.5)).is_empty());
        assert!(select_assignment(&[]).is_empty());
        assert_eq!(select_assignment(&grid(&[&[0.1], &[0.7], &[0.6]], 0.5)), [(1, 0)]);
    }

    #[test]
    fn wide_and_tall_grids() {
        let wide = grid(&[&[0.6, 0.9, 0.7]], 0.5);
        assert_eq!(select_assignment(&wide), [(0, 1)]);
        let tall = grid(&[&[0.6], &[0.9], &[0.7]], 0.5);
        assert_eq!(select_assignment(&tall), [(1, 0)]);
    }
}
