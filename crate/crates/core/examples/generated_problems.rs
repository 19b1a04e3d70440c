//! Every named generator, its JSON document, and a check of the analysis
//! against the embedded expected verdict.

use sqc::analysis::analyze;
use sqc::cli::{emit, generate_example, parse_problem_str, ExampleName};

fn main() -> sqc::Result<()> {
    for name in ExampleName::ALL {
        let p = generate_example(name, 4, 42)?;
        let text = emit(&p)?;
        assert_eq!(parse_problem_str(&text)?, p);
        let r = analyze(&p.matrix, &p.cone, &p.options);
        let expected = p.metadata.as_ref().map(|m| m.expected_verdict);
        println!(
            "{name:<20} {} (expected {}, by {})",
            r.verdict,
            expected.map_or("-".into(), |v| v.to_string()),
            r.decided_by.as_deref().unwrap_or("-")
        );
    }
    Ok(())
}
