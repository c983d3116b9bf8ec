// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::path::PathBuf;

use vpt_hedge::text::{parse_model, write_h2s, Model};
use vpt_hedge::{H2s, Label};

fn read(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn shipped_models_are_the_builtins() {
    let labels: BTreeSet<Label> = ["a", "b", "c", "d", "f"].iter().map(|n| Label::atom(n)).collect();
    for (file, name) in [("mirror.h2s", "mirror"), ("t2.h2s", "subhedge_root"), ("flatten.h2s", "flatten")] {
        let t = H2s::builtin(name, &labels).unwrap();
        assert_eq!(read(file), write_h2s(&t), "{file}");
    }
}

#[test]
fn copy_vpt_is_well_nested() {
    let Model::Vpt(a) = parse_model(&read("copy.vpt")).unwrap() else {
        panic!("copy.vpt is a vpt");
    };
    assert!(a.is_wn_vpt().unwrap());
    assert_eq!(a.states().len(), 1);
}
