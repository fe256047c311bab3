pub mod dimer;
pub mod moves;
pub mod network;
pub mod par;
pub mod planar;
pub mod poly;
pub mod report;
pub mod ssyt;
pub mod tl;
pub mod web;
pub mod webimm;
