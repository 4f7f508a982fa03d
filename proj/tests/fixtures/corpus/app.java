// app.java - driver sitting at the bottom of the inheritance chain.

public class App extends Square {
    Registry registry;

    void run(int count) {
        App app = new App();
        Registry.global();
        while (count > 0) {
            app.step(count);
        }
    }

    void step(int count) {
        switch (count) {
            case 0:
                halt();
        }
    }

    void halt() {
    }
}
