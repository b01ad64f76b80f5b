#include <iostream>

int main() {
    std::cout << "fracwave: placeholder\n";
    return 0;
}
