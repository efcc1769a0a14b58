use std::io::{self, Write};

use multidecomp::search::DecompInstance;

const HEADERS: [&str; 6] = ["tuple", "m", "block_sum", "sum_sq", "gap", "blocks"];

fn row(inst: &DecompInstance) -> [String; 6] {
    let tuple: Vec<String> = inst.tuple.iter().map(|v| v.to_string()).collect();
    let blocks: Vec<String> = inst
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|(i, j)| format!("{i}-{j}"))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    [
        format!("({})", tuple.join(", ")),
        inst.m.to_string(),
        inst.block_sum.to_string(),
        inst.sum_squares.to_string(),
        inst.gap.to_string(),
        blocks.join(" / "),
    ]
}

pub fn write_instances(out: &mut dyn Write, instances: &[DecompInstance]) -> io::Result<()> {
    let rows: Vec<[String; 6]> = instances.iter().map(row).collect();
    let mut widths = HEADERS.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut dyn Write, cells: &[&str]| -> io::Result<()> {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, &HEADERS)?;
    for r in &rows {
        line(out, &r.each_ref().map(String::as_str))?;
    }
    writeln!(out, "{} result(s)", rows.len())
}
