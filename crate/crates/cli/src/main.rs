fn main() { println!("sdg"); }
