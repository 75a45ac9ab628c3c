//! Bones, skeletons and entropy level sets for alternate compositions of two
//! unimodal interval maps, in the logistic family and in the stunted tent
//! model family.

pub mod dyadic;
pub mod entropy;
pub mod error;
pub mod export;
pub mod families;
pub mod geometry;
pub mod q_bones;
pub mod skeleton;
pub mod st_bones;
pub mod symbolic;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use families::{Family, ParamPoint};
pub use symbolic::{Itinerary, JointOrderData, OrderData};
