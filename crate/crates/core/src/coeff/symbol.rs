use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A named structure-constant parameter.
///
/// Names are interned once per process, so a `Sym` is a `Copy` handle that
/// compares and orders by its name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(&'static str);

fn table() -> &'static Mutex<HashSet<&'static str>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Sym {
    pub fn new(name: &str) -> Sym {
        let mut t = table().lock().expect("symbol table poisoned");
        if let Some(s) = t.get(name) {
            return Sym(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        t.insert(leaked);
        Sym(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}
