use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Run description written as '#' comment lines ahead of the CSV header.
pub struct Manifest {
    pub subcommand: String,
    pub parameters: Vec<(String, String)>,
    /// Source label and number of zeros, when the run uses a zero table.
    pub zero_table: Option<(String, usize)>,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        Manifest {
            subcommand: subcommand.to_string(),
            parameters: Vec::new(),
            zero_table: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn table(mut self, source: &str, count: usize) -> Self {
        self.zero_table = Some((source.to_string(), count));
        self
    }

    fn write(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "# ramsum {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# subcommand: {}", self.subcommand)?;
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(w, "# parameters: {}", params.join(" "))?;
        match &self.zero_table {
            Some((source, count)) => writeln!(w, "# zero_table: {source} ({count} zeros)")?,
            None => writeln!(w, "# zero_table: none")?,
        }
        writeln!(w, "# timestamp: {}", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    }
}

/// Opens the destination ("-" or absent means stdout) and writes the manifest.
pub fn open(out: Option<&Path>, manifest: &Manifest) -> io::Result<Box<dyn Write>> {
    let mut w: Box<dyn Write> = match out {
        Some(p) if p != Path::new("-") => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout().lock())),
    };
    manifest.write(&mut w)?;
    Ok(w)
}

/// Manifest followed by a CSV table.
pub fn write_csv(out: Option<&Path>, manifest: &Manifest, header: &[&str], rows: &[Vec<String>]) -> Result<(), csv::Error> {
    let w = open(out, manifest)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(header)?;
    for row in rows {
        csv.write_record(row)?;
    }
    csv.flush()?;
    Ok(())
}

/// Shortest text that parses back to the same f64.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}
