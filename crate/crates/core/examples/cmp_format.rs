//! Reading and writing `.cmp` documents.

use computads::format::{parse, print};

const TEXT: &str = "\
# The Klein bottle group.
generator a
generator b
relator a b a^-1 b
";

fn main() -> computads::Result<()> {
    let doc = parse(TEXT)?;
    println!("kind: {}", doc.kind().name());
    print!("{}", print(&doc));
    let c = doc
        .groupoidal()
        .expect("groups suspend to groupoidal computads");
    println!(
        "{} object, {} arrows, {} cells",
        c.base.object_count(),
        c.base.arrow_count(),
        c.cells.len()
    );
    match parse("object x\narrow f : x -> y\n") {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
