use std::collections::BTreeSet;

use kstab_core::scenario::RunOptions;

#[test]
fn dump_reports() {
    let reports = kstab_core::scen216::run(&BTreeSet::new(), &RunOptions::default()).unwrap();
    for r in &reports {
        println!("{:?} {}", r.status, r.check_id);
        if format!("{:?}", r.status) == "Fail" {
            println!("    expected: {:?}", r.expected);
            println!("    computed: {:?}", r.computed);
        }
    }
}
