//! Bin packing of readings into packets.

use crate::error::OracleError;
use crate::routing::Reading;

/// Largest multiset [`min_bins`] will pack exactly.
pub const MAX_EXACT_ITEMS: usize = 16;

/// Splits unit-size readings (in order) into full packets plus at most one
/// partial packet.
pub fn chunk_units(readings: &[Reading], capacity: u32) -> Vec<Vec<Reading>> {
    readings
        .chunks(capacity as usize)
        .map(<[Reading]>::to_vec)
        .collect()
}

/// First-fit decreasing. Ties in size keep the input order.
pub fn first_fit_decreasing(readings: &[Reading], capacity: u32) -> Vec<Vec<Reading>> {
    let mut sorted = readings.to_vec();
    sorted.sort_by(|a, b| b.size.cmp(&a.size));
    let mut bins: Vec<(u32, Vec<Reading>)> = Vec::new();
    for r in sorted {
        match bins.iter_mut().find(|(load, _)| load + r.size <= capacity) {
            Some((load, items)) => {
                *load += r.size;
                items.push(r);
            }
            None => bins.push((r.size, vec![r])),
        }
    }
    bins.into_iter().map(|(_, items)| items).collect()
}

/// Minimum number of bins of size `capacity` holding `sizes`, by
/// depth-first branch and bound. Returns the bin index of every item in
/// input order alongside the count.
pub fn min_bins(sizes: &[u32], capacity: u32) -> Result<(usize, Vec<usize>), OracleError> {
    if sizes.len() > MAX_EXACT_ITEMS {
        return Err(OracleError::PackingTooLarge(sizes.len()));
    }
    if sizes.is_empty() {
        return Ok((0, Vec::new()));
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let items: Vec<u32> = order.iter().map(|&i| sizes[i]).collect();

    // first-fit decreasing gives the initial incumbent
    let mut best_assign = Vec::with_capacity(items.len());
    let mut loads: Vec<u32> = Vec::new();
    for &s in &items {
        match loads.iter().position(|&l| l + s <= capacity) {
            Some(b) => {
                loads[b] += s;
                best_assign.push(b);
            }
            None => {
                loads.push(s);
                best_assign.push(loads.len() - 1);
            }
        }
    }
    let mut best = loads.len();
    let total: u64 = items.iter().map(|&s| u64::from(s)).sum();
    let lower = total.div_ceil(u64::from(capacity)) as usize;

    if best > lower {
        let mut search = BinSearch {
            items: &items,
            capacity,
            loads: Vec::new(),
            assign: vec![0; items.len()],
            best,
            best_assign: best_assign.clone(),
            lower,
        };
        search.place(0);
        best = search.best;
        best_assign = search.best_assign;
    }

    let mut result = vec![0; sizes.len()];
    for (pos, &original) in order.iter().enumerate() {
        result[original] = best_assign[pos];
    }
    Ok((best, result))
}

struct BinSearch<'a> {
    items: &'a [u32],
    capacity: u32,
    loads: Vec<u32>,
    assign: Vec<usize>,
    best: usize,
    best_assign: Vec<usize>,
    lower: usize,
}

impl BinSearch<'_> {
    fn place(&mut self, index: usize) {
        if self.best == self.lower {
            return;
        }
        if index == self.items.len() {
            if self.loads.len() < self.best {
                self.best = self.loads.len();
                self.best_assign = self.assign.clone();
            }
            return;
        }
        let size = self.items[index];
        for b in 0..self.loads.len() {
            // bins with equal load are interchangeable
            if self.loads[b] + size > self.capacity || self.loads[..b].contains(&self.loads[b]) {
                continue;
            }
            self.loads[b] += size;
            self.assign[index] = b;
            self.place(index + 1);
            self.loads[b] -= size;
        }
        if self.loads.len() + 1 < self.best {
            self.loads.push(size);
            self.assign[index] = self.loads.len() - 1;
            self.place(index + 1);
            self.loads.pop();
        }
    }
}
