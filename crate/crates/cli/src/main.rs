fn main() {
    println!("stverify: work in progress");
}
