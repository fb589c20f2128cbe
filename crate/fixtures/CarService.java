package garage;

import java.util.List;

/**
 * Booking interface for a small garage.
 */
public class CarService {

    private final String name;

    public CarService(String name) {
        this.name = name;
    }

    public String getCarType(int carId) {
        return "saloon";
    }

    // Books a vehicle in for its MOT.
    public boolean serviceVehicle(String carType, String mot) {
        return carType != null && mot != null;
    }

    public List<String> findGarages(String postCode, int maxDistance) {
        return List.of();
    }
}
