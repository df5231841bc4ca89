//! Shared computational context: one Kazhdan-Lusztig cache plus
//! lazily-grown cell lookup tables.
//!
//! The cell tables are complete only up to a covered length; [`Engine`]
//! rebuilds them transparently whenever a query needs more, so callers can
//! treat [`Engine::locate`] as total.

use std::sync::{Arc, Mutex};

use crate::cells::{CellCoords, CellTables};
use crate::kl::KlContext;
use crate::weyl::Element;

pub struct Engine {
    kl: KlContext,
    tables: Mutex<Arc<CellTables>>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Engine {
        let tables = CellTables::build(24).expect("cell coordinate collision");
        Engine { kl: KlContext::new(), tables: Mutex::new(Arc::new(tables)) }
    }

    pub fn kl(&self) -> &KlContext {
        &self.kl
    }

    /// Cell tables guaranteed to cover all supported elements of length
    /// ≤ `len`.  Rebuilding is rare (table construction is cheap relative
    /// to any Hecke-algebra work at such lengths) and grows in steps of 8
    /// to amortize repeated slightly-longer queries.
    pub fn tables_for(&self, len: u32) -> Arc<CellTables> {
        let mut guard = self.tables.lock().unwrap();
        if guard.covered_length() < len {
            let target = len.max(guard.covered_length() + 8);
            *guard = Arc::new(CellTables::build(target).expect("cell coordinate collision"));
        }
        Arc::clone(&guard)
    }

    /// The unique cell coordinates of `w`, or `None` if `w` lies in one of
    /// the unsupported two-sided cells.
    pub fn locate(&self, w: &Element) -> Option<CellCoords> {
        self.tables_for(w.length()).lookup(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{d_x, e_x, CellId};

    #[test]
    fn locate_grows_tables_on_demand() {
        let engine = Engine::new();
        assert_eq!(
            engine.locate(&Element::parse("121").unwrap()),
            Some(CellCoords::DFin { l: 4, m: 4, prime: false })
        );
        // Far beyond the initial covered length.
        let big = d_x(14);
        assert!(big.length() > 50);
        assert_eq!(engine.locate(&big), Some(CellCoords::DInf { i: 4, k: 13, tau: false, j: 4 }));
        let big_e = e_x(11);
        let c = engine.locate(&big_e).expect("long E element not located");
        assert_eq!(c.cell(), CellId::E);
        assert_eq!(c.k(), Some(11));
        // Unsupported cells still return None.
        assert_eq!(engine.locate(&Element::identity()), None);
        assert_eq!(engine.locate(&Element::parse("2").unwrap()), None);
    }
}
