//! Serialization helpers shared by the JSON reports.
//!
//! Complex numbers are written as `[re, im]` pairs and points of the sphere as
//! either such a pair or the string `"inf"`.

pub const SCHEMA_VERSION: &str = "1";

pub mod complex {
    use num_complex::Complex64;
    use serde::ser::SerializeTuple;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&z.re)?;
        t.serialize_element(&z.im)?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

pub mod complex_vec {
    use num_complex::Complex64;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

pub mod complex_opt {
    use num_complex::Complex64;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        match z {
            Some(z) => s.serialize_some(&[z.re, z.im]),
            None => s.serialize_none(),
        }
    }
}

impl serde::Serialize for crate::poly::Polynomial {
    /// Coefficients highest degree first, each as `[re, im]`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        complex_vec::serialize(self.coeffs(), s)
    }
}

impl serde::Serialize for crate::rational::RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalMap", 2)?;
        st.serialize_field("num", self.num())?;
        st.serialize_field("den", self.den())?;
        st.end()
    }
}
