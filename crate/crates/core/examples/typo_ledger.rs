//! Prints the recorded formula discrepancies with their reproduction values.

fn main() -> twovalued::error::Result<()> {
    let ledger = twovalued::ledger::typo_ledger()?;
    for entry in ledger["entries"].as_array().into_iter().flatten() {
        println!("{}\n  printed:     {}\n  implemented: {}\n", entry["id"], entry["printed"], entry["implemented"]);
    }
    Ok(())
}
