fn main() {
    println!("macq");
}
