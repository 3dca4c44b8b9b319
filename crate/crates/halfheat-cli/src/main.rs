fn main() { println!("halfheat"); }
