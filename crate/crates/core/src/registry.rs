//! Name-keyed registries for interchangeable strategies.
//!
//! Provers, translations and reproduction checks each implement a family
//! trait with [`Named`] as supertrait and are selected at runtime by name.

/// Something that can be looked up by a stable name.
pub trait Named {
    fn name(&self) -> &'static str;

    /// One-line human description.
    fn summary(&self) -> &'static str {
        ""
    }
}

/// Ordered registry of boxed strategies. Registering an existing name
/// replaces the earlier entry in place.
pub struct Registry<T: ?Sized> {
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Registry {
            entries: Vec::new(),
        }
    }
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, entry: Box<T>) -> Option<Box<T>> {
        match self.entries.iter().position(|e| e.name() == entry.name()) {
            Some(i) => Some(std::mem::replace(&mut self.entries[i], entry)),
            None => {
                self.entries.push(entry);
                None
            }
        }
    }

    pub fn with(mut self, entry: Box<T>) -> Self {
        self.register(entry);
        self
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Plain(&'static str);

    impl Named for Plain {
        fn name(&self) -> &'static str {
            self.0
        }
    }

    impl Greeter for Plain {
        fn greet(&self) -> String {
            format!("hello from {}", self.0)
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greeter> = Registry::new();
        assert!(reg.register(Box::new(Plain("a"))).is_none());
        reg.register(Box::new(Plain("b")));
        assert_eq!(reg.names(), vec!["a", "b"]);
        assert_eq!(reg.get("b").unwrap().greet(), "hello from b");
        assert!(reg.get("c").is_none());
        assert!(reg.register(Box::new(Plain("a"))).is_some());
        assert_eq!(reg.len(), 2);
    }
}
