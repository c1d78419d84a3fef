use crate::net::{Marking, Net, NetBuilder};

/// `p; t: p -> p`
pub fn self_loop() -> Net {
    let mut b = NetBuilder::new();
    let p = b.add_place("p").unwrap();
    b.add_transition("t", &[p], &[p]).unwrap();
    b.build()
}

/// `p1, p2; a: p1 -> p2, b: p2 -> p1, c: p2 -> (nothing)`
pub fn drain() -> Net {
    let mut b = NetBuilder::new();
    let p1 = b.add_place("p1").unwrap();
    let p2 = b.add_place("p2").unwrap();
    b.add_transition("a", &[p1], &[p2]).unwrap();
    b.add_transition("b", &[p2], &[p1]).unwrap();
    b.add_transition("c", &[p2], &[]).unwrap();
    b.build()
}

pub fn marking(net: &Net, entries: &[(&str, u32)]) -> Marking {
    Marking::from_named(net, entries.iter().copied()).unwrap()
}
