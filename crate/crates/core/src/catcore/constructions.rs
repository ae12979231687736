//! Small named categories used throughout the crate and its tests.

use super::category::{CategoryBuilder, FinCategory};

/// The cyclic group ℤ/n as a one-object category; arrow `g^k` is the k-th power.
pub fn cyclic_group(n: usize) -> FinCategory {
    assert!(n >= 1);
    let mut b = CategoryBuilder::new();
    let star = b.add_object_with_identity("*", "g^0");
    let mut powers = vec![b.identity(star)];
    for k in 1..n {
        powers.push(b.add_arrow(format!("g^{k}"), star, star));
    }
    b.build_with(|g, f| Some(powers[(g + f) % n]))
}

/// A discrete category on the given object names.
pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> FinCategory {
    let mut b = CategoryBuilder::new();
    for name in names {
        b.add_object(name);
    }
    b.build()
}

/// The span `c ←g− c′ −f→ c″`.
pub fn fence() -> FinCategory {
    let mut b = CategoryBuilder::new();
    let c = b.add_object("c");
    let c1 = b.add_object("c'");
    let c2 = b.add_object("c''");
    b.add_arrow("g", c1, c);
    b.add_arrow("f", c1, c2);
    b.build()
}

/// Two objects and mutually inverse arrows between them.
pub fn walking_isomorphism() -> FinCategory {
    let mut b = CategoryBuilder::new();
    let x = b.add_object("x");
    let y = b.add_object("y");
    let f = b.add_arrow("f", x, y);
    let g = b.add_arrow("g", y, x);
    b.set_composite(g, f, b.identity(x));
    b.set_composite(f, g, b.identity(y));
    b.build()
}
