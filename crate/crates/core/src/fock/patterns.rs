// Copyright 2026 The railgauge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use super::ClickPattern;

/// Every occupancy vector of length `n` with total photon number at most
/// `max_total`, in lexicographic order.
///
/// This is the nested loop over `i_1, …, i_n` where a loop is cut short as soon
/// as its prefix would exceed the photon budget, so no pattern outside the
/// budget is ever generated.
pub fn enumerate_patterns(n: usize, max_total: u32) -> PatternIter {
    PatternIter { current: vec![0; n], sum: 0, max_total, done: false }
}

#[derive(Clone, Debug)]
pub struct PatternIter {
    current: Vec<u32>,
    sum: u32,
    max_total: u32,
    done: bool,
}

impl Iterator for PatternIter {
    type Item = ClickPattern;

    fn next(&mut self) -> Option<ClickPattern> {
        if self.done {
            return None;
        }
        let out = ClickPattern::new(self.current.clone());
        if self.current.is_empty() {
            self.done = true;
            return Some(out);
        }
        let mut pos = self.current.len() - 1;
        loop {
            if self.sum < self.max_total {
                self.current[pos] += 1;
                self.sum += 1;
                break;
            }
            // budget used up: this loop level is done, carry into the outer one
            self.sum -= self.current[pos];
            self.current[pos] = 0;
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
        }
        Some(out)
    }
}
