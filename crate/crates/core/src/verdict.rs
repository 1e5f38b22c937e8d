/// Outcome of an exhaustive check: either the property holds everywhere or
/// the lexicographically first counterexample is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub(crate) fn from_first<I: IntoIterator<Item = W>>(failures: I) -> Self {
        match failures.into_iter().next() {
            Some(w) => Verdict::Fails(w),
            None => Verdict::Holds,
        }
    }
}
