//! CSV output: comma separated, LF line endings, every number written with
//! 17 significant digits so values round-trip exactly.

use std::io::{self, Write};

/// `x` in scientific notation with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_header<W: Write>(w: &mut W, header: &[&str]) -> io::Result<()> {
    writeln!(w, "{}", header.join(","))
}

pub fn write_row<W: Write>(w: &mut W, row: &[f64]) -> io::Result<()> {
    let mut line = String::with_capacity(row.len() * 24);
    for (k, x) in row.iter().enumerate() {
        if k > 0 {
            line.push(',');
        }
        line.push_str(&format_number(*x));
    }
    line.push('\n');
    w.write_all(line.as_bytes())
}

pub fn write_csv<W, I, R>(w: &mut W, header: &[&str], rows: I) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = R>,
    R: AsRef<[f64]>,
{
    write_header(w, header)?;
    for row in rows {
        write_row(w, row.as_ref())?;
    }
    Ok(())
}
