//! Daily price series on a trading-day axis.
//!
//! Days are consecutive 1-based ordinals with non-trading days already
//! removed, so every window length elsewhere in the crate is a plain count of
//! rows. Calendar dates ride along for output only.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Which values the network is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    /// Natural log of price (the default).
    #[default]
    Log,
    /// Raw price, kept for comparison runs.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricePoint {
    pub day_index: usize,
    pub date: Option<NaiveDate>,
    pub price: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    dates: Vec<Option<NaiveDate>>,
    prices: Vec<f64>,
    log_values: Vec<f64>,
    scale: Scale,
}

impl PriceSeries {
    /// Builds a series from positive prices, one per trading day.
    pub fn from_prices(prices: Vec<f64>) -> Result<Self> {
        let dates = vec![None; prices.len()];
        Self::from_parts(dates, prices)
    }

    pub fn from_dated_prices(dates: Vec<NaiveDate>, prices: Vec<f64>) -> Result<Self> {
        if dates.len() != prices.len() {
            return Err(Error::InvalidArgument(format!(
                "{} dates for {} prices",
                dates.len(),
                prices.len()
            )));
        }
        for (row, pair) in dates.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(Error::UnorderedDate {
                    row: row + 2,
                    date: pair[1].to_string(),
                });
            }
        }
        Self::from_parts(dates.into_iter().map(Some).collect(), prices)
    }

    fn from_parts(dates: Vec<Option<NaiveDate>>, prices: Vec<f64>) -> Result<Self> {
        if prices.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: prices.len(),
                needed: 2,
            });
        }
        for (idx, &price) in prices.iter().enumerate() {
            if !(price > 0.0 && price.is_finite()) {
                return Err(Error::NonPositivePrice {
                    row: idx + 1,
                    price,
                });
            }
        }
        let log_values = prices.iter().map(|p| p.ln()).collect();
        Ok(PriceSeries {
            dates,
            prices,
            log_values,
            scale: Scale::Log,
        })
    }

    /// Builds a series directly from log-prices. The log values are stored
    /// exactly as given; prices are `exp` of them.
    pub fn from_log_values(log_values: Vec<f64>) -> Result<Self> {
        if log_values.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: log_values.len(),
                needed: 2,
            });
        }
        if let Some(pos) = log_values.iter().position(|y| !y.is_finite()) {
            return Err(Error::NonFiniteValue(pos + 1));
        }
        let prices = log_values.iter().map(|y| y.exp()).collect();
        Ok(PriceSeries {
            dates: vec![None; log_values.len()],
            prices,
            log_values,
            scale: Scale::Log,
        })
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale;
        self
    }

    /// Series whose log values are the exact negation of this one's, in log
    /// scale. Peaks of the result are troughs of `self` and vice versa.
    pub fn negated_log(&self) -> Self {
        let log_values: Vec<f64> = self.log_values.iter().map(|y| -y).collect();
        PriceSeries {
            dates: self.dates.clone(),
            prices: log_values.iter().map(|y| y.exp()).collect(),
            log_values,
            scale: Scale::Log,
        }
    }

    /// Number of trading days `T`.
    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    pub fn dates(&self) -> &[Option<NaiveDate>] {
        &self.dates
    }

    /// Wall heights the networks are built on: log-prices or raw prices,
    /// depending on [`Scale`]. Position 0 is day 1.
    pub fn heights(&self) -> &[f64] {
        match self.scale {
            Scale::Log => &self.log_values,
            Scale::Raw => &self.prices,
        }
    }

    /// Point for a 1-based day index.
    pub fn point(&self, day: usize) -> Option<PricePoint> {
        let idx = day.checked_sub(1)?;
        Some(PricePoint {
            day_index: day,
            date: *self.dates.get(idx)?,
            price: self.prices[idx],
        })
    }

    pub fn points(&self) -> impl Iterator<Item = PricePoint> + '_ {
        self.prices
            .iter()
            .zip(&self.dates)
            .enumerate()
            .map(|(idx, (&price, &date))| PricePoint {
                day_index: idx + 1,
                date,
                price,
            })
    }

    pub(crate) fn date_string(&self, day: usize) -> String {
        self.dates
            .get(day - 1)
            .copied()
            .flatten()
            .map(|d| d.to_string())
            .unwrap_or_default()
    }

    pub(crate) fn check_day(&self, day: usize) -> Result<()> {
        if day == 0 || day > self.len() {
            Err(Error::DayOutOfRange {
                day,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Loads a daily series from a CSV with a header row.
///
/// Rows must be in strictly ascending date order; day indices are assigned
/// 1..T in row order. Row numbers in errors count data rows from 1.
pub fn load_csv(path: impl AsRef<Path>, price_column: &str, date_column: &str) -> Result<PriceSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, price_column, date_column)
}

pub fn read_csv<R: std::io::Read>(reader: R, price_column: &str, date_column: &str) -> Result<PriceSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let price_col = find(price_column)?;
    let date_col = find(date_column)?;

    let mut dates = Vec::new();
    let mut prices = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let raw_price = record.get(price_col).unwrap_or("");
        let price: f64 = raw_price.parse().map_err(|_| Error::BadPrice {
            row,
            value: raw_price.to_string(),
        })?;
        if !(price > 0.0 && price.is_finite()) {
            return Err(Error::NonPositivePrice { row, price });
        }
        let raw_date = record.get(date_col).unwrap_or("");
        let date = NaiveDate::parse_from_str(raw_date, "%Y-%m-%d").map_err(|_| Error::BadDate {
            row,
            value: raw_date.to_string(),
        })?;
        if let Some(&prev) = dates.last() {
            if date <= prev {
                return Err(Error::UnorderedDate {
                    row,
                    date: raw_date.to_string(),
                });
            }
        }
        dates.push(date);
        prices.push(price);
    }
    PriceSeries::from_dated_prices(dates, prices)
}

/// Writes `day_index,date,price,log_price`. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_series_csv<W: Write>(series: &PriceSeries, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["day_index", "date", "price", "log_price"])?;
    for (point, log_price) in series.points().zip(series.log_values()) {
        wtr.write_record([
            point.day_index.to_string(),
            point.date.map(|d| d.to_string()).unwrap_or_default(),
            point.price.to_string(),
            log_price.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<series csv>", e))?;
    Ok(())
}
