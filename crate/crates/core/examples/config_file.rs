//! Write the default parameter file, then load an edited copy.
//!
//! ```text
//! cargo run --example config_file > grips.toml
//! ```

use grips::config::Config;

fn main() -> grips::Result<()> {
    let defaults = Config::default();
    print!("{}", defaults.to_toml());

    let edited = Config::parse("horizon = 3\nsample_step = 0.5\nextra_mode = \"heading-average\"\n")?;
    let s = edited.smoother();
    eprintln!(
        "edited: horizon {}, {} candidate offsets, mode {}",
        s.prune_hs.horizon,
        s.prune_hs.offsets().len(),
        s.prune_hs.extra_mode
    );
    Ok(())
}
