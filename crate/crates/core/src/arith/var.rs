//! Interned parameter names.
//!
//! Every formal parameter (`a1`, `b2`, `b1_3`, ...) is interned once per
//! process. The id order is an implementation detail; anything that is
//! printed or serialized is ordered by [`Var::name_cmp`] instead, so output
//! never depends on interning order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::default()))
}

/// A formal parameter of the coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Var(id);
        }
        let mut guard = interner().write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Var(id);
        }
        let id = guard.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        guard.names.push(name.clone());
        guard.ids.insert(name, id);
        Var(id)
    }

    pub fn name(&self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }

    /// Natural order on names: `a2 < a10 < b1`.
    pub fn name_cmp(&self, other: &Var) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        natural_cmp(&self.name(), &other.name())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Compares strings treating embedded digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut xs, mut ys) = (a.as_bytes(), b.as_bytes());
    loop {
        match (xs.first(), ys.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let nx = xs.iter().take_while(|c| c.is_ascii_digit()).count();
                let ny = ys.iter().take_while(|c| c.is_ascii_digit()).count();
                let (dx, dy) = (trim_zeros(&xs[..nx]), trim_zeros(&ys[..ny]));
                let ord = dx.len().cmp(&dy.len()).then_with(|| dx.cmp(dy));
                if ord != Ordering::Equal {
                    return ord;
                }
                xs = &xs[nx..];
                ys = &ys[ny..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                xs = &xs[1..];
                ys = &ys[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k.min(s.len().saturating_sub(1))..]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::new("a1");
        assert_eq!(a, Var::new("a1"));
        assert_ne!(a, Var::new("a2"));
        assert_eq!(&*a.name(), "a1");
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("a2", "a10"), Ordering::Less);
        assert_eq!(natural_cmp("a10", "b1"), Ordering::Less);
        assert_eq!(natural_cmp("b1_2", "b1_10"), Ordering::Less);
        assert_eq!(natural_cmp("b", "b1"), Ordering::Less);
    }
}
