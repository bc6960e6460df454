use super::Verdict;

/// A computation that can be advanced one step at a time.
pub trait StepTask {
    /// Advances by one step. Returns `Some(result)` once the computation has finished;
    /// calling `step` again after that is allowed and returns the same result.
    fn step(&mut self) -> Option<bool>;
}

impl<F: FnMut() -> Option<bool>> StepTask for F {
    fn step(&mut self) -> Option<bool> {
        self()
    }
}

/// Fair interleaving of a possibly infinite family of step-resumable boolean tasks.
///
/// Round `r` admits task `r` (if the family has one) and then gives every admitted,
/// unfinished task a quantum of `2^r` steps, in index order. The scheduler answers
/// `True` as soon as a task finishes with `true`, `False` if the family is finite and
/// every task finished with `false`, and `Unknown` when `budget` steps have been spent.
///
/// A task with index `i` that finishes with `true` after `s` steps is found within
/// [`fairness_step_bound`]`(i, s)` total steps.
pub fn dovetail<I, T>(tasks: I, budget: u64) -> Verdict
where
    I: IntoIterator<Item = T>,
    T: StepTask,
{
    if budget == 0 {
        return Verdict::Unknown { budget_spent: 0 };
    }
    let mut source = tasks.into_iter();
    let mut exhausted = false;
    let mut active: Vec<Option<T>> = Vec::new();
    let mut spent = 0u64;
    let mut round = 0u32;
    loop {
        if !exhausted {
            match source.next() {
                Some(t) => active.push(Some(t)),
                None => exhausted = true,
            }
        }
        if exhausted && active.iter().all(Option::is_none) {
            return Verdict::False;
        }
        let quantum = 1u64 << round.min(62);
        for slot in active.iter_mut() {
            let Some(task) = slot else { continue };
            let mut used = 0;
            while used < quantum {
                if spent == budget {
                    return Verdict::Unknown { budget_spent: spent };
                }
                spent += 1;
                used += 1;
                match task.step() {
                    Some(true) => return Verdict::True,
                    Some(false) => {
                        *slot = None;
                        break;
                    }
                    None => {}
                }
            }
        }
        round += 1;
    }
}

/// Upper bound on the total steps [`dovetail`] spends before observing task `index`
/// finish with `true` after `steps` of its own: with `R = max(index, ⌈log2 steps⌉)`,
/// at most `Σ_{r≤R} (r+1)·2^r = R·2^(R+1) + 1`.
pub fn fairness_step_bound(index: usize, steps: u64) -> u64 {
    let log = if steps <= 1 {
        0
    } else {
        64 - (steps - 1).leading_zeros()
    };
    let r = (index as u64).max(log as u64);
    r.saturating_mul(1u64.checked_shl((r + 1) as u32).unwrap_or(u64::MAX))
        .saturating_add(1)
}
