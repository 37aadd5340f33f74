mod acceptance_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/acceptance_suite.rs"));
}

mod category_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/category_files.rs"));
}

mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

mod concrete_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/concrete_sets.rs"));
}

mod end_monoids {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/end_monoids.rs"));
}

mod endo_quotient {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/endo_quotient.rs"));
}

mod enumerate_functors {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/enumerate_functors.rs"));
}

mod natural_isomorphism {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/natural_isomorphism.rs"));
}

mod preorder_categories {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/preorder_categories.rs"));
}

mod promote {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/promote.rs"));
}

mod proper_autoequivalence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/proper_autoequivalence.rs"));
}

mod skeleton {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/skeleton.rs"));
}

mod validate_category {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/validate_category.rs"));
}

#[test]
fn acceptance_suite_example_runs() {
    acceptance_suite::run_example().expect("acceptance_suite example should run");
}

#[test]
fn category_files_example_runs() {
    category_files::run_example().expect("category_files example should run");
}

#[test]
fn command_line_example_runs() {
    command_line::run_example().expect("command_line example should run");
}

#[test]
fn concrete_sets_example_runs() {
    concrete_sets::run_example().expect("concrete_sets example should run");
}

#[test]
fn end_monoids_example_runs() {
    end_monoids::run_example().expect("end_monoids example should run");
}

#[test]
fn endo_quotient_example_runs() {
    endo_quotient::run_example().expect("endo_quotient example should run");
}

#[test]
fn enumerate_functors_example_runs() {
    enumerate_functors::run_example().expect("enumerate_functors example should run");
}

#[test]
fn natural_isomorphism_example_runs() {
    natural_isomorphism::run_example().expect("natural_isomorphism example should run");
}

#[test]
fn preorder_categories_example_runs() {
    preorder_categories::run_example().expect("preorder_categories example should run");
}

#[test]
fn promote_example_runs() {
    promote::run_example().expect("promote example should run");
}

#[test]
fn proper_autoequivalence_example_runs() {
    proper_autoequivalence::run_example().expect("proper_autoequivalence example should run");
}

#[test]
fn skeleton_example_runs() {
    skeleton::run_example().expect("skeleton example should run");
}

#[test]
fn validate_category_example_runs() {
    validate_category::run_example().expect("validate_category example should run");
}
